import sys

try:
    import goalrec  # noqa: F401
except ImportError:
    sys.stderr.write("goalrec module not installed; run pip install --no-build-isolation .\n")
    sys.exit(77)
