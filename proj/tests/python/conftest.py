import os
import sys

# ctest points EBNET_MODULE_DIR at the in-tree build; make sure that copy wins over any installed one,
# including an editable install whose import hook would otherwise take precedence.
_module_dir = os.environ.get("EBNET_MODULE_DIR")
if _module_dir:
    sys.meta_path[:] = [f for f in sys.meta_path if not type(f).__module__.startswith("_editable_skbc")]
    sys.path.insert(0, _module_dir)
    import ebnet

    assert os.path.dirname(os.path.dirname(os.path.abspath(ebnet.__file__))) == os.path.abspath(_module_dir), ebnet.__file__
    assert os.path.dirname(os.path.abspath(ebnet._ebnet.__file__)).startswith(os.path.abspath(_module_dir)), ebnet._ebnet.__file__
