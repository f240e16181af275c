from src.plots.impulse_responses import plot_impulse_response
from src.plots.root_maps import analyze_root_map, plot_root_map
