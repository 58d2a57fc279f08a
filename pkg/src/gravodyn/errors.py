"""Exception types shared across the package."""


class ContractViolationError(RuntimeError):
    """A numerical invariant (Hermiticity, normalization, stability bound) was violated."""


class SizeLimitError(RuntimeError):
    """A resource cap (basis size, sweep grid size) was exceeded."""


class ModeOverflowError(Exception):
    """Raising a mode occupation past n_max would leave the truncated space.

    This is a signal, not silent truncation: the caller decides whether
    projecting the result away is acceptable.
    """


class ConfigError(ValueError):
    """Scenario configuration is malformed; carries file/line/key context."""

    def __init__(self, message, line=None, key=None):
        self.line = line
        self.key = key
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key '{key}'")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
