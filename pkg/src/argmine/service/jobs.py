"""In-memory job store for long-running submissions.

Jobs run on a thread pool sized to the host's available parallelism.
Results and failures are kept for a fixed TTL after completion and then
purged; the store lives in process memory only, so a service restart
forgets every job. Submissions carrying the same idempotency key within
the TTL are deduplicated onto the first job.
"""

from __future__ import annotations

import os
import threading
import time
import uuid
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

from ..errors import EngineError

PENDING = "pending"
RUNNING = "running"
DONE = "done"
FAILED = "failed"

DEFAULT_TTL_SECONDS = 3600.0


class UnknownJobError(KeyError):
    def __init__(self, job_id: str):
        super().__init__(job_id)
        self.job_id = job_id


@dataclass
class Job:
    job_id: str
    state: str = PENDING
    result: dict | None = None
    error: dict | None = None
    submitted_at: float = 0.0
    # Set when the job finishes; the job is purged once the clock passes it.
    expires_at: float | None = None

    def to_payload(self) -> dict:
        payload: dict = {"job_id": self.job_id, "state": self.state}
        if self.state == DONE:
            payload["result"] = self.result
        elif self.state == FAILED:
            payload["error"] = self.error
        return payload


@dataclass
class JobStore:
    ttl_seconds: float = DEFAULT_TTL_SECONDS
    max_workers: int | None = None
    clock: Callable[[], float] = time.monotonic
    _jobs: dict[str, Job] = field(default_factory=dict)
    _idempotency: dict[str, tuple[str, float]] = field(default_factory=dict)
    _lock: threading.Lock = field(default_factory=threading.Lock)
    _executor: ThreadPoolExecutor | None = None

    def __post_init__(self) -> None:
        workers = self.max_workers if self.max_workers is not None else (os.cpu_count() or 1)
        self._executor = ThreadPoolExecutor(max_workers=workers)

    def _purge_locked(self, now: float) -> None:
        dead = [j.job_id for j in self._jobs.values() if j.expires_at is not None and j.expires_at <= now]
        for job_id in dead:
            del self._jobs[job_id]
        stale = [key for key, (_, expires) in self._idempotency.items() if expires <= now]
        for key in stale:
            del self._idempotency[key]

    def submit(self, fn: Callable[[], dict], idempotency_key: str | None = None) -> str:
        """Queue fn and return the new job id (or the id of the live job
        already registered under the same idempotency key)."""
        now = self.clock()
        with self._lock:
            self._purge_locked(now)
            if idempotency_key is not None:
                hit = self._idempotency.get(idempotency_key)
                if hit is not None and hit[0] in self._jobs:
                    return hit[0]
            job_id = uuid.uuid4().hex
            self._jobs[job_id] = Job(job_id=job_id, submitted_at=now)
            if idempotency_key is not None:
                self._idempotency[idempotency_key] = (job_id, now + self.ttl_seconds)
        assert self._executor is not None
        self._executor.submit(self._run, job_id, fn)
        return job_id

    def _run(self, job_id: str, fn: Callable[[], dict]) -> None:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is None:
                return
            job.state = RUNNING
        try:
            result = fn()
            error = None
        except EngineError as exc:
            result = None
            error = {"code": exc.code, "message": str(exc)}
        except Exception as exc:  # pragma: no cover - defensive
            result = None
            error = {"code": "job.internal", "message": f"{type(exc).__name__}: {exc}"}
        now = self.clock()
        with self._lock:
            job = self._jobs.get(job_id)
            if job is None:
                return
            job.state = DONE if error is None else FAILED
            job.result = result
            job.error = error
            job.expires_at = now + self.ttl_seconds

    def get(self, job_id: str) -> Job:
        now = self.clock()
        with self._lock:
            self._purge_locked(now)
            job = self._jobs.get(job_id)
            if job is None:
                raise UnknownJobError(job_id)
            return job

    def wait(self, job_id: str, timeout: float = 30.0, poll: float = 0.02) -> Job:
        """Block until the job leaves pending/running (test and CLI helper)."""
        deadline = time.monotonic() + timeout
        while True:
            job = self.get(job_id)
            if job.state in (DONE, FAILED):
                return job
            if time.monotonic() >= deadline:
                return job
            time.sleep(poll)

    def close(self) -> None:
        assert self._executor is not None
        self._executor.shutdown(wait=False, cancel_futures=True)
