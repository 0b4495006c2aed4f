"""Synchronous link-activation matching on complete bipartite graphs."""

try:
    from ._core import (
        __version__,
        algorithms,
        figure_preset,
        run_experiment,
        run_trial,
    )
except ImportError:  # built in-tree: the extension sits on sys.path directly
    from _core import (
        __version__,
        algorithms,
        figure_preset,
        run_experiment,
        run_trial,
    )

__all__ = [
    "__version__",
    "algorithms",
    "figure_preset",
    "run_experiment",
    "run_trial",
]
