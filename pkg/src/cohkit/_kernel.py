"""Import-time selection of the simplex pivot kernel.

The compiled kernel is preferred when built; COHKIT_KERNEL=py or
COHKIT_KERNEL=cy forces a choice (the latter fails loudly when the
extension is missing).
"""

import os

_choice = os.environ.get("COHKIT_KERNEL", "").strip().lower()

if _choice == "py":
    from cohkit._simplex_py import run_simplex

    KERNEL_NAME = "pure-python"
elif _choice == "cy":
    from cohkit._simplex_cy import run_simplex  # noqa: F811

    KERNEL_NAME = "compiled"
else:
    try:
        from cohkit._simplex_cy import run_simplex  # noqa: F811

        KERNEL_NAME = "compiled"
    except ImportError:
        from cohkit._simplex_py import run_simplex  # noqa: F811

        KERNEL_NAME = "pure-python"

__all__ = ["run_simplex", "KERNEL_NAME"]
