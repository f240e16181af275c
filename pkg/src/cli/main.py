import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel

from src.cli.jobfile import JobFile, load_job
from src.cli.reports import analyze, phi_report
from src.controller import assemble, controller_document, controller_report, verify_fixture
from src.errors import (FirCertificationError, JobFileError, NotAdmissibleError, NotFiniteError,
                        QuasiPolynomialSyntaxError, TimeDelayError)
from src.factorization import factor_plant, factorization_document, factorization_report, report_to_text
from src.lti import export_csv, frequency_response, impulse_response_frame
from src.phi import FirBlock, common_rhp_zeros, phi_decompose
from src.qpoly import parse
from src.rootfinder import Finiteness

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_ADMISSIBLE = 2

# Command result: report text, structured document, exit code
Outcome = Tuple[str, Optional[BaseModel], int]


def _impulse_csv(job: JobFile, block: FirBlock, suffix: str, horizon: Optional[float] = None) -> Path:
    end = float(block.support_end)
    t_max = end + (horizon if horizon is not None else max(3.0 * end, 1.0))
    grid = np.linspace(0.0, t_max, job.options.impulse_samples)
    path = export_csv(impulse_response_frame(block.delay_sum, grid), job.output_path(suffix))
    logger.info("wrote %s", path)
    return path


def _frequency_csv(job: JobFile, system, suffix: str = "_frequency.csv") -> Path:
    options = job.options
    omegas = np.logspace(np.log10(options.omega_min), np.log10(options.omega_max), options.omega_points)
    path = export_csv(frequency_response(system, omegas), job.output_path(suffix))
    logger.info("wrote %s", path)
    return path


def cmd_analyze(job: JobFile) -> Outcome:
    q = parse(job.require("quasi_polynomial").q)
    report, document = analyze(q, job.options.tolerances())
    undecided = Finiteness.INDETERMINATE.value in (report["Finiteness"], report["Conjugate finiteness"])
    code = EXIT_NOT_ADMISSIBLE if undecided else EXIT_OK
    return report_to_text(report), document, code


def cmd_factor(job: JobFile) -> Outcome:
    plant = job.require("plant").to_plant()
    fp = factor_plant(plant, job.options.tolerances())
    report = factorization_report(fp)
    return report_to_text(report), factorization_document(fp, report), EXIT_OK


def cmd_phi(job: JobFile) -> Outcome:
    section = job.require("phi")
    options = job.options
    tolerances = options.tolerances()
    g, g0 = section.to_delay_sum(), section.to_carrier()
    cancellations = common_rhp_zeros(g, g0, tolerances, options.zero_tolerance)
    h, f = phi_decompose(g, g0, tolerances, options.zero_tolerance, horizon=options.horizon,
                         cancellations=cancellations)
    report, document = phi_report(g, g0, cancellations, h, f)
    _impulse_csv(job, f, "_impulse.csv", options.horizon)
    text = report_to_text(report)
    if f.certification is not None:
        text += "\n\n[FIR certification]\n" + f.certification.to_text()
    return text, document, EXIT_OK


def cmd_controller(job: JobFile) -> Outcome:
    plant = job.require("plant").to_plant()
    data = job.require("synthesis").to_synthesis_data()
    if job.weights is not None:
        weights = job.weights.to_weights()
        logger.info("weights W1 = %s, W2 = %s", weights.w1, weights.w2)
    options = job.options
    tolerances = options.tolerances()
    fp = factor_plant(plant, tolerances)
    form = assemble(fp, data, tolerances, zero_tolerance=options.zero_tolerance, horizon=options.horizon)

    _impulse_csv(job, form.f_n, "_fn.csv", options.horizon)
    _impulse_csv(job, form.f_d, "_fd.csv", options.horizon)
    _frequency_csv(job, form)

    sections = [report_to_text(controller_report(form))]
    for name, block in (("F_n", form.f_n), ("F_d", form.f_d)):
        if block.certification is not None:
            sections.append(f"[{name} certification]\n{block.certification.to_text()}")
    return "\n\n".join(sections), controller_document(form), EXIT_OK


def cmd_fixture(job: JobFile) -> Outcome:
    section = job.require("fixture")
    options = job.options
    tolerances = options.tolerances()
    f_n, f_d = section.blocks()
    result = verify_fixture(f_n, f_d, section.fn_support, section.fd_support, tolerances=tolerances)
    for name, block, suffix in (("F_n", f_n, "_fn.csv"), ("F_d", f_d, "_fd.csv")):
        if block is not None:
            record = result.certifications[name]
            _impulse_csv(job, FirBlock(block, record.support, record), suffix, tolerances.fixture_horizon)
    return result.to_text(), None, EXIT_OK if result.passed else EXIT_ERROR


COMMANDS = {
    "analyze": (cmd_analyze, "classify a quasi-polynomial and locate its C+ roots"),
    "factor": (cmd_factor, "coprime inner/outer factorization of a plant"),
    "phi": (cmd_phi, "split G/G0 into H plus an FIR block"),
    "controller": (cmd_controller, "assemble the optimal controller in FIR form"),
    "fixture": (cmd_fixture, "certify printed FIR controller terms"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tds-fir", description="Factorization and FIR structure of optimal "
                                                                 "H-infinity controllers for time-delay plants")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        command = subparsers.add_parser(name, help=help_text)
        command.add_argument("job", type=Path, help="job file")
        command.add_argument("--json", type=Path, default=None, help="also write the structured document here")
        command.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    return parser


def run(command: str, job_path: Path, json_path: Optional[Path] = None) -> int:
    """
    Runs one command on one job file, printing the report on stdout.

    Returns:
        int: 0 on success, 1 on malformed input or failed computation, 2 for a plant or quasi-polynomial that
            is not admissible or not decided.
    """
    handler, _ = COMMANDS[command]
    try:
        job = load_job(job_path)
        text, document, code = handler(job)
    except (JobFileError, QuasiPolynomialSyntaxError) as error:
        logger.error("cannot parse %s: %s", job_path, error)
        return EXIT_ERROR
    except NotAdmissibleError as error:
        print(f"Case: NotAdmissible\nReason: {error.reason}")
        return EXIT_NOT_ADMISSIBLE
    except NotFiniteError as error:
        logger.error("%s", error)
        return EXIT_NOT_ADMISSIBLE
    except FirCertificationError as error:
        logger.error("%s", error)
        if error.record is not None:
            print(error.record.to_text())
        return EXIT_ERROR
    except TimeDelayError as error:
        logger.error("%s", error)
        return EXIT_ERROR

    print(text)
    if json_path is not None and document is not None:
        json_path.write_text(document.model_dump_json(indent=2), encoding="utf-8")
    return code


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")
    return run(args.command, args.job, args.json)


if __name__ == "__main__":
    sys.exit(main())
