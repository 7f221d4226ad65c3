"""
Analysis reports: one model per instance, JSON or plain text
"""
from typing import List

from loguru import logger

from ..models.errors import TooLarge
from ..models.schemas import AnalysisReport, HSummary, TheoremResult
from .bitsets import members
from .fintopology import separation_flags
from .subcrypto import subcrypto_entries
from .topoalgebra import TRIVIALIZED, TopoSemigroup, separation_per_hclass
from .verification import verify_theorems


def h_summary(TS: TopoSemigroup) -> HSummary:
    h = TS.h
    return HSummary(
        classes=h.h_partition.as_lists(),
        identities=list(h.idem_of_class),
        inverses=list(h.inv),
    )


def build_report(TS: TopoSemigroup, with_theorems: bool = True) -> AnalysisReport:
    separation = separation_flags(TS.T)
    report = AnalysisReport(
        name=TS.name,
        n=TS.n,
        classify=TS.algebra,
        topo=TS.flags,
        separation=separation,
        annotations=dict(separation.annotations),
    )

    if TS.algebra.is_cryptogroup:
        report.h_structure = h_summary(TS)
        try:
            report.subcryptogroups = subcrypto_entries(TS)
        except TooLarge as e:
            logger.warning(f"{TS.name}: subcryptogroups skipped ({e.message})")
            report.annotations["subcryptogroups"] = e.message
    if TS.is_botg:
        report.separation_per_hclass = separation_per_hclass(TS)
        if separation.t2:
            report.annotations["hausdorff"] = TRIVIALIZED
    if with_theorems:
        report.theorems = verify_theorems(TS)

    logger.info(f"Report built for {TS.name}")
    return report


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def render_ledger(results: List[TheoremResult]) -> str:
    lines = []
    for r in results:
        status = "n/a " if not r.applicable else ("PASS" if r.passed else "FAIL")
        line = f"  [{status}] {r.theorem} ({r.checks} checks)"
        if r.note:
            line += f"  # {r.note}"
        lines.append(line)
        if r.witness and not r.passed:
            lines.append(f"         witness: {r.witness}")
    return "\n".join(lines)


def render_text(report: AnalysisReport) -> str:
    out = [f"{report.name} (n={report.n})", "=" * 50]

    c = report.classify
    out.append(
        f"band: {_yes(c.is_band)}  completely regular: {_yes(c.is_completely_regular)}  "
        f"cryptic: {_yes(c.is_cryptic)}  cryptogroup: {_yes(c.is_cryptogroup)}"
    )
    t = report.topo
    out.append(
        f"topological semigroup: {_yes(t.is_topological_semigroup)}  "
        f"topological cryptogroup: {_yes(t.is_topological_cryptogroup)}  "
        f"band of topological groups: {_yes(t.is_botg_criterion)}"
    )
    if t.mult_witness:
        out.append(f"  multiplication discontinuous at {tuple(t.mult_witness)}")

    s = report.separation
    names = ("t0", "t1", "t2", "regular", "completely_regular", "normal",
             "connected", "locally_connected", "discrete", "metrizable")
    out.append("separation: " + ", ".join(f"{name}={_yes(getattr(s, name))}" for name in names))

    if report.h_structure:
        out.append(f"H-classes: {report.h_structure.classes}")
        out.append(f"inverses: {report.h_structure.inverses}")

    if report.subcryptogroups:
        out.append("full subcryptogroups:")
        for entry in report.subcryptogroups:
            r = entry.record
            flags = ", ".join(name for name in ("is_normal", "is_open", "is_closed", "is_discrete_subspace")
                              if getattr(r, name))
            line = f"  {r.subset}: {flags or '-'}"
            if entry.hausdorff:
                h = entry.hausdorff
                line += f"  triple=({h.quotient_hausdorff}, {h.rho_closed}, {h.n_closed})"
            out.append(line)

    if report.theorems:
        out.append("theorems:")
        out.append(render_ledger(report.theorems))

    for key, note in sorted(report.annotations.items()):
        out.append(f"note[{key}]: {note}")
    return "\n".join(out)


def subset_line(mask: int) -> str:
    return ",".join(str(x) for x in members(mask))
