"""Exception types raised across the package."""


class HierlogError(Exception):
    """Base class for all errors raised by hierlog."""


class BadName(HierlogError, ValueError):
    def __init__(self, name):
        super().__init__(f"malformed symbol name {name!r}")
        self.name = name


class DuplicateSymbol(HierlogError, ValueError):
    def __init__(self, name, levels):
        super().__init__(f"symbol {name!r} declared more than once (levels {sorted(levels)})")
        self.name = name
        self.levels = tuple(sorted(levels))


class UnknownSymbol(HierlogError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unknown symbol {self.name!r}"


class LevelOutOfRange(HierlogError, ValueError):
    def __init__(self, level, depth):
        super().__init__(f"level {level} outside 0..{depth}")
        self.level = level
        self.depth = depth


class InvalidModel(HierlogError, ValueError):
    def __init__(self, violations):
        self.violations = list(violations)
        lines = "\n".join(str(v) for v in self.violations[:10])
        super().__init__(f"model violates {len(self.violations)} invariant(s):\n{lines}")


class ModelFormatError(HierlogError, ValueError):
    """A model or relation document is structurally malformed."""


class FormulaSyntaxError(HierlogError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class LevelViolation(HierlogError, ValueError):
    def __init__(self, subformula, reason):
        super().__init__(f"{subformula}: {reason}")
        self.subformula = subformula
        self.reason = reason


class LevelMismatch(HierlogError, ValueError):
    pass


class PointOutsideDomain(HierlogError, ValueError):
    def __init__(self, point):
        super().__init__(f"point {point} is not in the domain")
        self.point = point


class NameClash(HierlogError, ValueError):
    pass


class UnboundVariable(HierlogError, KeyError):
    def __init__(self, name):
        super().__init__(name)
        self.name = name

    def __str__(self):
        return f"unbound variable {self.name!r}"


class SortMismatch(HierlogError, TypeError):
    pass


class SignatureMismatch(HierlogError, ValueError):
    pass


class NotHierarchical(HierlogError, ValueError):
    def __init__(self, which, level, pair):
        super().__init__(f"{which} is not hierarchical (level {level}, pair {pair})")
        self.which = which
        self.level = level
        self.pair = pair
