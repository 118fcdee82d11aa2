"""Deterministic parallel map over independent work items."""

from typing import Callable, Iterable, List, TypeVar

from joblib import Parallel, delayed

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(func: Callable[[T], R], items: Iterable[T], n_jobs: int = 1) -> List[R]:
    """
    Apply ``func`` to every item, returning results in input order.

    Work runs on a joblib thread pool; numpy releases the GIL inside its
    linear-algebra kernels. With ``n_jobs == 1`` everything runs inline.

    Args:
        func: Function of one item
        items: Work items
        n_jobs: Number of worker threads (-1 for all cores)

    Returns:
        List of results, ordered like ``items``
    """
    if n_jobs == 1:
        return [func(item) for item in items]
    return list(Parallel(n_jobs=n_jobs, prefer="threads")(delayed(func)(item) for item in items))
