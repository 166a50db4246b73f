"""
Content-addressed result cache and run records

The cache key of a run is the sha256 of its normalized command line, the
digests of the catalog documents it read and the engine version, so a hit
returns exactly the text the computation would print. The cache lives in
the ``MORAVA['CACHE_ALIAS']`` cache and may be deleted at any time.
"""

import hashlib
import json
import logging
import time
from typing import Callable

from django.conf import settings
from django.core.cache import caches

from runs.models import RunRecord

logger = logging.getLogger(__name__)


def _sha256(payload) -> str:
    text = json.dumps(payload, sort_keys=True, ensure_ascii=False)
    return hashlib.sha256(text.encode('utf-8')).hexdigest()


def normal_form(command: str, options: dict) -> str:
    """``command --key=value ...`` over the options that are set, sorted by key."""
    parts = [command]
    for key in sorted(options):
        value = options[key]
        if value is None or value is False:
            continue
        flag = f"--{key.replace('_', '-')}"
        parts.append(flag if value is True else f"{flag}={value}")
    return " ".join(parts)


def config_hash() -> str:
    morava = settings.MORAVA
    return _sha256({'ENGINE_VERSION': morava['ENGINE_VERSION'], 'DEFAULT_TRUNCATION': morava['DEFAULT_TRUNCATION']})


def cache_key(command_line: str, input_digests: dict[str, str]) -> str:
    return _sha256({
        'command': command_line,
        'inputs': input_digests,
        'engine': settings.MORAVA['ENGINE_VERSION'],
    })


def run(command: str, command_line: str, input_digests: dict[str, str], produce: Callable[[], str], use_cache: bool = True) -> tuple[str, RunRecord | None]:
    """Return the output of ``produce``, from the cache when possible.

    ``use_cache=False`` recomputes and refreshes the cached entry.
    """
    start = time.perf_counter()
    key = cache_key(command_line, input_digests)
    cache = caches[settings.MORAVA['CACHE_ALIAS']]
    payload = cache.get(key) if use_cache else None
    hit = payload is not None
    if hit:
        logger.info("cache hit for %s", command_line)
    else:
        payload = produce()
        cache.set(key, payload)
    elapsed = time.perf_counter() - start

    record = None
    if settings.MORAVA['RECORD_RUNS']:
        record = RunRecord.objects.create(
            command=command,
            command_line=command_line,
            config_hash=config_hash(),
            input_digests=input_digests,
            cache_key=key,
            payload=payload,
            wall_time=elapsed,
            cache_hit=hit,
        )
    return payload, record
