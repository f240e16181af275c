from src.phi.certification import (FirBlock, FirCertification, certify_fir, default_horizon,
                                   tail_coefficient_residual)
from src.phi.decomposition import CancellationSet, common_rhp_zeros, decomposition_residual, phi_decompose
