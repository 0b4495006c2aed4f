import os
import sys

HERE = os.path.dirname(os.path.abspath(__file__))
ROOT = os.path.dirname(os.path.dirname(HERE))

# the pure-python package lives in python/, the compiled module lands in
# the build tree (PULSEMATCH_MODULE_DIR when driven by ctest)
sys.path.insert(0, os.path.join(ROOT, "python"))
module_dir = os.environ.get("PULSEMATCH_MODULE_DIR")
if module_dir:
    sys.path.insert(0, module_dir)
