from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel, Field, model_validator

from ybsolve.qset import PropertyFlags

SCHEMA_VERSION = "1"


class MplStatus(str, Enum):
    FINITE = "finite"
    IRRETRACTABLE = "irretractable"
    UNDECIDED = "undecided"
    NOT_APPLICABLE = "not_applicable"


class FlagsModel(BaseModel):
    nondegenerate: bool
    involutive: bool
    braided: bool
    l1: bool
    r1: bool
    lr3: bool
    square_free: bool
    lri: bool
    cyclic_cl1: bool
    cyclic_cl2: bool
    cyclic_cr1: bool
    cyclic_cr2: bool
    first_witness: Dict[str, List[int]] = Field(
        default_factory=dict, description="Least failing tuple per violated law, 0-based indices"
    )

    @classmethod
    def from_flags(cls, flags: PropertyFlags) -> "FlagsModel":
        return cls(**flags.to_dict())


class RetractClassModel(BaseModel):
    members: List[str] = Field(..., description="Labels of the elements in the class")
    restricted_mpl: Optional[int] = Field(None, description="mpl of the class as a sub-solution")


class SolutionReport(BaseModel):
    schema_version: str = Field(SCHEMA_VERSION, description="Version of this report layout")
    n: int = Field(..., ge=1, description="Number of elements")
    labels: List[str]
    right_derived: bool = Field(..., description="Right action derived as the inverse of the left action")
    flags: FlagsModel
    square_free_solution: bool
    orbits: List[List[str]] = Field(default_factory=list, description="𝒢-orbits, ordered by least element")
    mpl: Optional[int] = Field(None, ge=0, description="Multipermutation level when finite")
    mpl_status: MplStatus = MplStatus.NOT_APPLICABLE
    mpl_note: Optional[str] = Field(None, description="e.g. 'irretractable at level 2'")
    group_order: Optional[int] = Field(None, ge=1, description="|𝒢(X, r)|")
    group_abelian: Optional[bool] = None
    sol_group: Optional[int] = Field(None, ge=0, description="Solvable length of 𝒢(X, r)")
    sol_structure_group: Optional[int] = Field(None, ge=1, description="Solvable length of G(X, r)")
    abelian_invariants: Optional[List[int]] = Field(None, description="Invariant factors d₁ | d₂ | …")
    retract_classes: List[RetractClassModel] = Field(default_factory=list)
    retract_classes_stu: Optional[bool] = Field(
        None, description="Whether the retract classes form a strong twisted union (2 ≤ mpl ≤ 3)"
    )
    notes: List[str] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_consistency(self) -> "SolutionReport":
        if self.mpl_status == MplStatus.FINITE and self.mpl is None:
            raise ValueError("finite mpl status without a level")
        if self.square_free_solution and self.mpl == 1 and self.group_order not in (None, 1):
            raise ValueError("a square-free solution of mpl 1 has a trivial permutation group")
        if self.sol_group is not None and self.sol_structure_group is not None:
            if self.sol_structure_group != self.sol_group + 1:
                raise ValueError("sol(G) must equal sol(𝒢) + 1")
        if self.abelian_invariants is not None and self.group_abelian is False:
            raise ValueError("abelian invariants reported for a non-abelian group")
        return self
