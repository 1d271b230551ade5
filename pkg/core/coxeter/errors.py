"""Errors raised while building and enumerating Coxeter systems."""


class CoxeterError(ValueError):
    """Invalid Coxeter matrix, twist or type label."""


class InfiniteTypeError(CoxeterError):
    """The requested presentation does not define a finite group."""


class ElementCapExceeded(RuntimeError):
    """Enumeration produced more elements than the configured cap."""

    def __init__(self, cap: int, name: str = ""):
        self.cap = cap
        where = f" for {name}" if name else ""
        super().__init__(f"element cap {cap:,} exceeded{where}")
