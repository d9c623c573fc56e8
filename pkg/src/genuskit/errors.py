"""Error types shared across the package."""


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed the configured element cap."""


class InternalInconsistencyError(RuntimeError):
    """A computed value violated an invariant that correct code cannot break."""
