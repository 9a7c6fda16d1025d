"""Optional on-disk cache of enumerated Weyl groups and Bruhat tables.

Files are pickles keyed by Cartan type, library version and format version.
The cache is a pure accelerator: unreadable, stale or mismatched files are
ignored and silently regenerated.
"""

import logging
import os
import pickle
from pathlib import Path

from . import __version__

FORMAT_VERSION = 1
ENV_VAR = "SCHUBLOCUS_CACHE_DIR"

log = logging.getLogger(__name__)


def cache_dir(explicit=None):
    d = explicit if explicit is not None else os.environ.get(ENV_VAR)
    return Path(d) if d else None


def cache_path(cartan_type, directory):
    return Path(directory) / f"weyl-{cartan_type}-v{__version__}-f{FORMAT_VERSION}.pkl"


def load(cartan_type, directory=None):
    d = cache_dir(directory)
    if d is None:
        return None
    path = cache_path(cartan_type, d)
    try:
        with open(path, "rb") as fh:
            data = pickle.load(fh)
    except FileNotFoundError:
        return None
    except Exception as exc:  # corrupt file: recompute
        log.info("ignoring unreadable cache file %s: %s", path, exc)
        return None
    if (
        not isinstance(data, dict)
        or data.get("format") != FORMAT_VERSION
        or data.get("version") != __version__
        or data.get("type") != str(cartan_type)
        or len(data.get("perms", ())) != cartan_type.weyl_order
    ):
        return None
    return data


def store(cartan_type, payload, directory=None):
    d = cache_dir(directory)
    if d is None:
        return None
    d.mkdir(parents=True, exist_ok=True)
    path = cache_path(cartan_type, d)
    data = dict(payload, format=FORMAT_VERSION, version=__version__, type=str(cartan_type))
    tmp = path.with_suffix(f".tmp{os.getpid()}")
    with open(tmp, "wb") as fh:
        pickle.dump(data, fh, protocol=pickle.HIGHEST_PROTOCOL)
    os.replace(tmp, path)
    return path


def clear(directory=None):
    d = cache_dir(directory)
    if d is None or not d.exists():
        return 0
    n = 0
    for p in d.glob("weyl-*.pkl"):
        p.unlink()
        n += 1
    return n
