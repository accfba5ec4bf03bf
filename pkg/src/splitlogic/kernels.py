"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the pure-Python
twins are used. Set ``SPLITLOGIC_PURE=1`` to force the pure-Python backend.
"""

import os

from . import _pykernels as python_backend

try:
    if os.environ.get("SPLITLOGIC_PURE") == "1":
        raise ImportError("pure backend requested")
    from . import _ckernels as compiled_backend
except ImportError:
    compiled_backend = None

backend = compiled_backend if compiled_backend is not None else python_backend
BACKEND_NAME = "compiled" if compiled_backend is not None else "python"

distinct_count = backend.distinct_count
is_product = backend.is_product
dependent_pairs = backend.dependent_pairs
has_nontrivial_factor = backend.has_nontrivial_factor
min_distances = backend.min_distances
minimal_xors = backend.minimal_xors
set_revision_hits = backend.set_revision_hits
preference_edges = backend.preference_edges
affine_image = backend.affine_image
