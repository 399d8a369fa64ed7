VERSION = "0.1.0"

CUBE_MAGIC = b"KBLM"
MASK_MAGIC = b"KBLMMASK"
FORMAT_VERSION = 1

# Upper bound on payload entries accepted by the readers.
MAX_ENTRIES = 1 << 34
