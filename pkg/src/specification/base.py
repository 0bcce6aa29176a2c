from abc import ABC, abstractmethod

from src.shiftspace.points import SymbolicPoint
from src.shiftspace.system import ShiftSystem
from src.specification.models import GapFunction, SegmentPlan


class GluingOracle(ABC):
    @abstractmethod
    def gap(self, sys: ShiftSystem, eps: float) -> GapFunction:
        """Return a gap function sufficient for shadowing at scale eps."""
        ...

    @abstractmethod
    def glue(self, sys: ShiftSystem, plan: SegmentPlan, gap: GapFunction) -> SymbolicPoint:
        """Return a point that eps-shadows every segment of an admissible plan."""
        ...

    def shadow(self, sys: ShiftSystem, plan: SegmentPlan) -> SymbolicPoint:
        return self.glue(sys, plan, self.gap(sys, plan.eps))
