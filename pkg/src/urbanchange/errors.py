"""Exception types shared across the package."""


class ValidationError(Exception):
    """Domain, schema, or argument violation in user-supplied data.

    The CLI maps this (and ValueError/IndexError) to exit code 2;
    OSError and friends map to exit code 1.
    """
