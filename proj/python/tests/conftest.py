import importlib.machinery
import importlib.util
import os
import sys
from pathlib import Path

# Under ctest, import the package from the build tree even when an editable
# install is present; its import hook would otherwise take precedence.
_build = os.environ.get("FOOD_PY_DIR")
if _build:
    _pkg = Path(_build) / "food"
    _so = next(p for p in _pkg.iterdir()
               if p.name.startswith("_core.") and p.name.endswith(tuple(importlib.machinery.EXTENSION_SUFFIXES)))
    _core_spec = importlib.util.spec_from_file_location("food._core", _so)
    _core = importlib.util.module_from_spec(_core_spec)
    sys.modules["food._core"] = _core
    _core_spec.loader.exec_module(_core)
    _spec = importlib.util.spec_from_file_location(
        "food", _pkg / "__init__.py", submodule_search_locations=[str(_pkg)])
    _mod = importlib.util.module_from_spec(_spec)
    sys.modules["food"] = _mod
    _spec.loader.exec_module(_mod)
    _mod._core = _core
