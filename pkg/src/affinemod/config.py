"""Run-time budgets and the seed, held in a context variable."""

import contextlib
import contextvars
import dataclasses
import os


@dataclasses.dataclass(frozen=True)
class Config:
    seed: int = 0
    max_basis: int = 400
    max_reduction_steps: int = 2_000_000
    chain_cap: int = 8
    lnd_bound: int = 64
    retry_budget: int = 40

    @classmethod
    def from_env(cls, **overrides):
        env = {}
        if "AFFINEMOD_CAP_GROEBNER" in os.environ:
            env["max_basis"] = int(os.environ["AFFINEMOD_CAP_GROEBNER"])
        if "AFFINEMOD_CAP_CHAIN" in os.environ:
            env["chain_cap"] = int(os.environ["AFFINEMOD_CAP_CHAIN"])
        env.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**env)


_current = contextvars.ContextVar("affinemod_config", default=Config())


def get_config():
    return _current.get()


@contextlib.contextmanager
def use_config(config=None, **changes):
    base = config if config is not None else _current.get()
    token = _current.set(dataclasses.replace(base, **changes))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
