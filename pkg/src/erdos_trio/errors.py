"""Exception types shared across the package."""


class VerificationError(RuntimeError):
    """A finite check that is mathematically guaranteed to pass has failed.

    Raising this means either the implementation is wrong or the underlying
    claim is false; it is never a recoverable user error.
    """


class ResourceLimitError(MemoryError):
    """A requested computation would exceed the configured memory budget."""
