"""
JSON serialization for reports and models

Numpy scalars and arrays become native types, non-finite floats become
null, and keys are sorted so identical runs write identical bytes.
"""
import json
from enum import Enum
from pathlib import Path
from typing import Union

import numpy as np
from pydantic import BaseModel


def serialize_for_json(obj):
    """
    Recursively convert obj to JSON-safe native types

    Handles pydantic models, dicts, lists/tuples, numpy scalars/arrays,
    enums, paths and NaN/Inf (-> None).
    """
    if isinstance(obj, BaseModel):
        return serialize_for_json(obj.model_dump(mode="python"))

    elif isinstance(obj, dict):
        return {str(k): serialize_for_json(v) for k, v in obj.items()}

    elif isinstance(obj, (list, tuple)):
        return [serialize_for_json(v) for v in obj]

    elif isinstance(obj, Enum):
        return obj.value

    elif isinstance(obj, bool):
        return obj

    elif isinstance(obj, float):
        if np.isnan(obj) or np.isinf(obj):
            return None
        return obj

    elif isinstance(obj, np.bool_):
        return bool(obj)

    elif isinstance(obj, (np.integer, np.floating)):
        if isinstance(obj, np.floating):
            return serialize_for_json(float(obj))
        return int(obj)

    elif isinstance(obj, np.ndarray):
        return serialize_for_json(obj.tolist())

    elif isinstance(obj, Path):
        return str(obj)

    return obj


def safe_json_dumps(obj, **kwargs) -> str:
    """
    Deterministic JSON text (sorted keys, 2-space indent by default)

    Usage:
        json_str = safe_json_dumps(report)
    """
    kwargs.setdefault("sort_keys", True)
    kwargs.setdefault("indent", 2)
    kwargs.setdefault("ensure_ascii", False)
    return json.dumps(serialize_for_json(obj), allow_nan=False, **kwargs)


def write_json(obj, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(safe_json_dumps(obj) + "\n", encoding="utf-8")
    return path
