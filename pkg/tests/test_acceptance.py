"""End-to-end checks on the published example data."""
import mpmath
import numpy as np
import pytest

from src.cli.jobfile import load_job
from src.controller import REFERENCE_DESIGNS, compute_gamma_opt, verify_fixture
from src.errors import GammaComputationError
from src.factorization import factor_plant, inner_deviation
from src.lti import DelaySum, RationalFunction
from src.phi import certify_fir, decomposition_residual, phi_decompose
from src.qpoly import conjugate
from src.rootfinder import Rectangle, count_roots, finiteness_rhp, rhp_roots, search_rhp_roots

OMEGAS = np.logspace(-2, 3, 200)


def test_asymptotic_magnitudes_of_q1(q1):
    witness = sorted(finiteness_rhp(q1).witness)
    np.testing.assert_allclose(witness[::2], [1.0312, 1.6796], atol=1e-3)


def test_root_counts(q1, q2):
    assert count_roots(q1, Rectangle(0.0, 10.0, -30.0, 30.0)) == 2
    roots = rhp_roots(conjugate(q2))
    assert roots.total == 1
    assert abs(roots.roots[0] - 0.2470) <= 1e-3


def test_q1_roots_against_extended_precision(q1):
    def q(s):
        return (3 * s + 0.5) + (2 * s + 7) * mpmath.exp(-1.5 * s) + (s - 1) * mpmath.exp(-2 * s)

    with mpmath.workdps(30):
        for root in search_rhp_roots(q1).roots.roots:
            reference = complex(mpmath.findroot(q, mpmath.mpc(root.real, root.imag)))
            assert abs(root - reference) <= 1e-9


@pytest.mark.parametrize("name, side, expected", [
    ("p1", "m_qn", [1.0, -2.0418, 3.1553]),
    ("p1", "m_d", [1.0, -1.2470, 1.1137]),
    ("p2", "m_qn", [1.0, -1.1296]),
    ("p2", "m_d", [1.0, -0.8306, 2.7426]),
    ("p3", "m_qn", [1.0, -0.2470]),
    ("p3", "m_d", [1.0, -0.9343, 3.7868]),
])
def test_factorization_coefficients(request, name, side, expected):
    fp = factor_plant(request.getfixturevalue(name))
    inner = getattr(fp, side)
    np.testing.assert_allclose(inner.numerator, expected, atol=1e-3)
    np.testing.assert_allclose(inner.denominator, [c * (-1) ** k for k, c in enumerate(expected)], atol=1e-3)


@pytest.mark.parametrize("name", ["p1", "p2", "p3"])
def test_inner_factors_are_all_pass(request, name):
    deviation = inner_deviation(factor_plant(request.getfixturevalue(name)), OMEGAS)
    assert max(deviation.values()) <= 1e-8


def test_fir_golden_example(jobs_dir):
    job = load_job(jobs_dir / "fir_example.ini")
    g, g0 = job.phi.to_delay_sum(), job.phi.to_carrier()
    h, f = phi_decompose(g, g0, job.options.tolerances(), job.options.zero_tolerance, horizon=job.options.horizon)
    coefficients = [c for rational in f.delay_sum.rationals for c in rational.numerator]
    np.testing.assert_allclose(coefficients, [-0.1260, 0.3061, -0.5588, -0.0810], atol=1e-3)
    assert decomposition_residual(g, g0, h, f) <= 1e-9


def test_machine_precision_blocks_are_fir():
    # G/G0 = (1 - e^{2 - 2s})/((s - 1)(s + 3)) has a removable pole at s = 1
    lag = RationalFunction((1.0,), (1.0, 4.0, 3.0))
    g = DelaySum.from_pairs([(lag, 0), (lag * (-np.exp(2.0)), 2)])
    carrier = RationalFunction((1.0, -1.0), (1.0, 1.0))
    _, block = phi_decompose(g, carrier)
    record = certify_fir(block.delay_sum, 2, horizon=6)
    assert record.passed
    assert record.relative_tail <= 1e-8


@pytest.mark.parametrize("name", ["fixture_p1", "fixture_p2", "fixture_p3"])
def test_printed_controller_terms_are_fir(jobs_dir, name):
    section = load_job(jobs_dir / f"{name}.ini").fixture
    f_n, f_d = section.blocks()
    report = verify_fixture(f_n, f_d, section.fn_support, section.fd_support, tolerance=1e-2, horizon=3)
    assert report.passed, report.to_text()


def test_optimal_levels_are_metadata_only():
    assert {name: row["gamma_opt"] for name, row in REFERENCE_DESIGNS.items()} == {"P1": 1.8595, "P2": 0.9579,
                                                                           "P3": 0.5534}
    with pytest.raises(GammaComputationError):
        compute_gamma_opt()
