"""
Assembly of the full analysis report for one quadratic set.
"""

from typing import Any, Dict, List, Optional

from ybsolve.exceptions import BoundExceededError, MplUndefinedError
from ybsolve.group import abelian_invariants, is_abelian, orbit_partition, solvable_length, yb_group
from ybsolve.logging_config import get_logger
from ybsolve.models import FlagsModel, MplStatus, RetractClassModel, SolutionReport
from ybsolve.qset import QuadraticSet, classify
from ybsolve.retract import TowerStatus, retract_class_decomposition, retract_tower

logger = get_logger(__name__)


def build_report(Q: QuadraticSet, max_group: Optional[int] = None) -> SolutionReport:
    """Flags, orbits, mpl, group data and retract classes as far as they are defined.

    max_group bounds the full element enumeration behind the abelian invariants.
    """
    flags = classify(Q)
    notes: List[str] = []
    fields: Dict[str, Any] = {
        "n": Q.n,
        "labels": list(Q.labels),
        "right_derived": Q.lri_derived,
        "flags": FlagsModel.from_flags(flags),
        "square_free_solution": flags.square_free_solution,
        "notes": notes,
    }
    if Q.lri_derived:
        notes.append("right action derived from the left action (lri)")
    if not flags.nondegenerate:
        notes.append("degenerate: orbits and group data are not defined")
        return SolutionReport(**fields)

    fields["orbits"] = [[Q.labels[x] for x in orbit] for orbit in orbit_partition(Q).orbits]
    group = yb_group(Q)
    abelian = is_abelian(group)
    fields["group_order"] = group.order
    fields["group_abelian"] = abelian

    if not flags.symmetric:
        notes.append("not a symmetric set: retract and solvable lengths skipped")
        return SolutionReport(**fields)

    tower = retract_tower(Q)
    if tower.status == TowerStatus.TERMINATED:
        fields["mpl_status"] = MplStatus.FINITE
        fields["mpl"] = tower.level
    elif tower.status == TowerStatus.STABILIZED:
        fields["mpl_status"] = MplStatus.IRRETRACTABLE
        fields["mpl_note"] = f"irretractable at level {tower.level}"
    else:
        fields["mpl_status"] = MplStatus.UNDECIDED
        fields["mpl_note"] = tower.describe()

    sol = solvable_length(group)
    fields["sol_group"] = sol
    if sol is not None and flags.square_free:
        fields["sol_structure_group"] = sol + 1
    if abelian:
        try:
            fields["abelian_invariants"] = abelian_invariants(group, max_group)
        except BoundExceededError as exc:
            logger.warning("abelian invariants skipped: %s", exc)
            notes.append(f"abelian invariants skipped: {exc}")

    level = fields.get("mpl")
    if flags.square_free and level is not None and level >= 1:
        try:
            decomposition = retract_class_decomposition(Q)
        except MplUndefinedError as exc:
            notes.append(str(exc))
        else:
            fields["retract_classes"] = [
                RetractClassModel(members=c.labels, restricted_mpl=c.restricted_mpl)
                for c in decomposition.classes
            ]
            fields["retract_classes_stu"] = decomposition.stu_union
    return SolutionReport(**fields)
