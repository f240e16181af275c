from src.cli.jobfile import JobFile, JobOptions, load_job, parse_coefficients, parse_rational
from src.cli.main import build_parser, main, run
from src.cli.reports import AnalysisDocument, PhiDocument, analyze, phi_report
