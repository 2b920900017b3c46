import json
import math
import os

EXACT_CAP_ENV = "HYPERSPEC_EXACT_CAP"
DEFAULT_EXACT_CAP = 64
NUMERIC_CAP = 2048


def exact_cap() -> int:
    raw = os.environ.get(EXACT_CAP_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_EXACT_CAP
    return int(raw)


def sig12(x):
    """Round a float to 12 significant digits for stable JSON output."""
    if x is None or isinstance(x, (bool, int)):
        return x
    x = float(x)
    if not math.isfinite(x):
        return x
    y = float(f"{x:.12g}")
    return 0.0 if y == 0 else y


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, float):
        return sig12(obj)
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        return _clean(obj.item())
    return obj


def dumps(obj, pretty=False) -> str:
    return json.dumps(_clean(obj), indent=2 if pretty else None, sort_keys=False)
