"""Size limits shared by the library and the CLI.

Each default can be overridden through an environment variable, read once
at import time.
"""
import os
from dataclasses import dataclass


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


@dataclass
class Limits:
    max_n: int = 2**20            # largest N accepted by BranchIndices
    oracle_n: int = 4096          # largest N for dense matrix oracles
    group_size: int = 10**7       # element cap for group closure
    max_m_perms: int = 40320      # cap on m! enumerations (m <= 8)
    max_matrix_entries: int = 2**24


LIMITS = Limits(
    max_n=_env_int("KRONSHUFFLE_MAX_N", 2**20),
    oracle_n=_env_int("KRONSHUFFLE_ORACLE_N", 4096),
    group_size=_env_int("KRONSHUFFLE_GROUP_LIMIT", 10**7),
    max_m_perms=_env_int("KRONSHUFFLE_MAX_M_PERMS", 40320),
    max_matrix_entries=_env_int("KRONSHUFFLE_MAX_MATRIX_ENTRIES", 2**24),
)
