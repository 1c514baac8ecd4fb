"""Scenario files: a generator, a domain, component expressions, and an
optional partner function for the pairwise checks.

Schema::

    {
      "name": "...",                     # optional
      "gen": {...},                      # generator config
      "domain": [a, b],
      "r": "expr", "q": "expr",          # the primary function f
      "partner": {"r": "...", "q": "..."},  # optional g for ibp / dbr
      "eps0": 1.0                        # optional; r/q may then use eps
    }

The shipped catalog is the fixed regression surface for the calculus and
variational checkers.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from ..calculus import FuzzyFunction
from ..errors import LcfnError
from ..generator import Generator


@dataclass(frozen=True)
class Scenario:
    name: str
    gen: Generator
    domain: tuple[float, float]
    f: FuzzyFunction
    partner: FuzzyFunction | None
    eps0: float | None


def parse_scenario(cfg: dict, gen_override: Generator | None = None) -> Scenario:
    if gen_override is not None:
        gen = gen_override
    elif "gen" in cfg:
        gen = Generator.from_config(cfg["gen"])
    else:
        raise LcfnError("scenario has no 'gen' and no generator was supplied")
    try:
        domain = (float(cfg["domain"][0]), float(cfg["domain"][1]))
        eps0 = cfg.get("eps0")
        two_var = eps0 is not None
        f = FuzzyFunction.from_strings(cfg["r"], cfg["q"], gen, domain,
                                       two_variable=two_var)
        partner = None
        if cfg.get("partner") is not None:
            partner = FuzzyFunction.from_strings(
                cfg["partner"]["r"], cfg["partner"]["q"], gen, domain)
    except KeyError as missing:
        raise LcfnError(f"scenario is missing key {missing}") from None
    return Scenario(name=cfg.get("name", "scenario"), gen=gen, domain=domain,
                    f=f, partner=partner,
                    eps0=float(eps0) if two_var else None)


def load_scenario(path, gen_override: Generator | None = None) -> Scenario:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scenario(json.load(fh), gen_override)


def catalog_names() -> tuple[str, ...]:
    files = resources.files(__name__)
    return tuple(sorted(p.name for p in files.iterdir()
                        if p.name.endswith(".json")))


def load_catalog() -> tuple[Scenario, ...]:
    files = resources.files(__name__)
    out = []
    for name in catalog_names():
        cfg = json.loads(files.joinpath(name).read_text(encoding="utf-8"))
        out.append(parse_scenario(cfg))
    return tuple(out)


def catalog_scenario(name: str) -> Scenario:
    for scenario in load_catalog():
        if scenario.name == name:
            return scenario
    raise KeyError(name)
