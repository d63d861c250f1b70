import sys
from pathlib import Path

# when pytest runs from the repository root, the bare figgen/ directory
# shadows the installed package; put the real source first
SRC = str(Path(__file__).resolve().parents[1] / "src")
if SRC not in sys.path:
    sys.path.insert(0, SRC)
for name in [m for m in sys.modules if m == "figgen" or m.startswith("figgen.")]:
    if not getattr(sys.modules[name], "__file__", None):
        del sys.modules[name]
