"""Small shared helpers."""

from __future__ import annotations

import hashlib


def derive_seed(seed: int, *tags) -> int:
    """Deterministic child seed from a root seed and hashable tags.

    Stable across processes (unlike hash())."""
    payload = repr((seed,) + tags).encode()
    digest = hashlib.blake2b(payload, digest_size=8).digest()
    return int.from_bytes(digest, "big")
