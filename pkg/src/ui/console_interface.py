"""
Console interface module for report output.
Provides human-readable and JSON rendering of bound reports, certificates,
planner paths and verification records, plus colored diagnostics.
"""

import json
import sys
from typing import Any, Dict, Optional, TextIO

from colorama import Fore, Style, init

from src.algebra.cuplength import CupLengthCertificate
from src.bounds.report import BoundReport
from src.planners.spaces import PathSample
from src.planners.verification import VerificationRecord
from src.utils.errors import TCPairError, describe
from src.utils.logger import get_logger

# Initialize colorama for cross-platform color support
init()

logger = get_logger(__name__)


def to_json_text(document: Dict[str, Any]) -> str:
    """Serialize with keys in insertion order, UTF-8 text, two-space indent."""
    return json.dumps(document, ensure_ascii=False, indent=2)


def bounds_line(report: BoundReport) -> str:
    """
    The headline of a report.

    Returns:
        "TC = k (exact)", "k1 ≤ TC ≤ k2" or "TC ≥ k1"
    """
    if report.exact:
        return f"TC = {report.value} (exact)"
    if report.upper is None:
        return f"TC ≥ {report.lower}"
    return f"{report.lower} ≤ TC ≤ {report.upper}"


class ConsoleInterface:
    """Writes reports to standard output and diagnostics to standard error."""

    def __init__(self, json_mode: bool = False, out: Optional[TextIO] = None, err: Optional[TextIO] = None):
        """
        Initialize the console interface.

        Args:
            json_mode: Emit JSON documents instead of text
            out: Stream for reports (default stdout)
            err: Stream for diagnostics (default stderr)
        """
        self.json_mode = json_mode
        self.out = out or sys.stdout
        self.err = err or sys.stderr
        self.color = hasattr(self.out, "isatty") and self.out.isatty()
        logger.debug("ConsoleInterface initialized")

    def _paint(self, text: str, color: str) -> str:
        if not self.color:
            return text
        return f"{color}{text}{Style.RESET_ALL}"

    def _write(self, text: str) -> None:
        self.out.write(text + "\n")

    def format_report(self, report: BoundReport) -> str:
        """
        Human-readable report: subject, headline, then one line per step.

        Args:
            report: Bound report

        Returns:
            Multi-line text
        """
        headline_color = Fore.GREEN + Style.BRIGHT if report.exact else Fore.YELLOW + Style.BRIGHT
        lines = [
            self._paint(report.subject, Fore.CYAN + Style.BRIGHT),
            "  " + self._paint(bounds_line(report), headline_color)
        ]
        for step in report.steps:
            cite = f"  [{step.cite}]" if step.cite else ""
            lines.append(f"  - {step.rule}: {step.value}{self._paint(cite, Fore.WHITE + Style.DIM)}")
        for certificate in report.certificates:
            lines.append(f"  certificate: {self.format_certificate(certificate)}")
        return "\n".join(lines)

    @staticmethod
    def format_certificate(certificate: CupLengthCertificate) -> str:
        factors = " · ".join(f"({label})" for label in certificate.labels) or "1"
        return f"k = {certificate.k}, {factors} = {certificate.product}"

    def emit_report(self, report: BoundReport) -> str:
        """Write a report in the current mode and return the text written."""
        text = to_json_text(report.to_json()) if self.json_mode else self.format_report(report)
        self._write(text)
        return text

    def emit_certificate(self, certificate: CupLengthCertificate, document: Dict[str, Any]) -> str:
        if self.json_mode:
            text = to_json_text(document)
        else:
            text = "\n".join([
                self._paint(document["bound"], Fore.GREEN + Style.BRIGHT),
                f"  {self.format_certificate(certificate)}"
            ])
        self._write(text)
        return text

    def emit_path(self, path: PathSample) -> str:
        if self.json_mode:
            text = to_json_text(path.to_json())
        else:
            start, end = path.points[0], path.points[-1]
            text = "\n".join([
                self._paint(f"rule {path.rule}", Fore.GREEN + Style.BRIGHT),
                f"  {len(path.params)} samples",
                f"  start {[round(float(x), 6) for x in start]}",
                f"  end   {[round(float(x), 6) for x in end]}"
            ])
        self._write(text)
        return text

    def emit_record(self, record: VerificationRecord, tolerance: float) -> str:
        if self.json_mode:
            text = to_json_text(record.to_json())
        else:
            status = self._paint("PASS", Fore.GREEN + Style.BRIGHT) if record.passed(tolerance) \
                else self._paint("FAIL", Fore.RED + Style.BRIGHT)
            text = "\n".join([
                f"{status} {record.samples} samples (seed {record.seed})",
                f"  cover failures:     {record.cover_failures}",
                f"  endpoint max error: {record.endpoint_max_err:.3e}",
                f"  continuity defect:  {record.continuity_defect:.4f} at δ = {record.delta}"
            ])
        self._write(text)
        return text

    def print_error(self, error: Exception) -> None:
        """
        Diagnostic on stderr: "error: Class: message", or a JSON object in JSON mode.
        """
        name = type(error).__name__
        message = str(error)
        if self.json_mode:
            self.err.write(json.dumps(describe(error), ensure_ascii=False) + "\n")
        else:
            color = self.err.isatty() if hasattr(self.err, "isatty") else False
            prefix = f"{Fore.RED}{Style.BRIGHT}error{Style.RESET_ALL}" if color else "error"
            self.err.write(f"{prefix}: {name}: {message}\n")
        if isinstance(error, TCPairError):
            logger.debug(f"{name} mapped to exit code {error.exit_code}")
