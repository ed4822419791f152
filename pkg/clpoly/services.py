# clpoly/services.py
import logging
from concurrent.futures import Future, ThreadPoolExecutor, as_completed
from typing import Any, Callable, Dict, Iterable, List, Tuple

logger = logging.getLogger(__name__)

DEFAULT_MAX_WORKERS = 4


def run_per_degree(
    task: Callable[[int], Any],
    degrees: Iterable[int],
    max_workers: int = DEFAULT_MAX_WORKERS,
    error_mode: str = "return",
    label: str = "degree",
) -> Tuple[Dict[int, Any], List[Dict[str, Any]]]:
    """
    Run ``task(d)`` for every degree on a thread pool.

    Returns (results keyed by degree, errors). error_mode "return" collects
    per-degree failures as {"degree": d, "error": message}; "raise" re-raises
    the first one.
    """
    if error_mode not in ("return", "raise"):
        raise ValueError(f"unknown error_mode {error_mode!r}")
    degrees = list(dict.fromkeys(degrees))
    results: Dict[int, Any] = {}
    errors: List[Dict[str, Any]] = []
    if not degrees:
        return results, errors

    def _process(d: int) -> Dict[str, Any]:
        try:
            return {"success": True, "value": task(d)}
        except Exception as e:
            logger.warning("%s %d failed: %s", label.capitalize(), d, e)
            return {"success": False, "error": str(e), "exception": e}

    with ThreadPoolExecutor(max_workers=max(1, max_workers)) as executor:
        futures_map: Dict[Future, int] = {executor.submit(_process, d): d for d in degrees}
        for future in as_completed(futures_map):
            d = futures_map[future]
            result = future.result()
            if result["success"]:
                results[d] = result["value"]
                logger.info("Finished %s %d.", label, d)
                continue
            if error_mode == "raise":
                raise result["exception"]
            errors.append({label: d, "error": result["error"]})

    errors.sort(key=lambda e: e[label])
    return dict(sorted(results.items())), errors
