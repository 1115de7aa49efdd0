"""Experiment configuration: one JSON document, validated, reproducible.

All randomness flows from run.seed; a missing seed is a validation error
rather than a timestamp default.  CLI flags override config fields
(CLI > file), see episwitch.cli.
"""

import json
from dataclasses import dataclass, field, replace

from . import _rng
from .errors import ConfigError, EpiSwitchError
from .graphs import (complete_graph, empty_graph, gen_barabasi_albert,
                     gen_gilbert, gen_regular, gen_watts_strogatz,
                     read_edge_list, star_graph)
from .switching import (FixedTrace, GilbertRegenerate, IidUniform, IidWeighted,
                        Periodic)

__all__ = ["ExperimentConfig", "build_graphs", "build_policy", "beta_values"]

_SECTIONS = ("model", "policy", "epidemic", "run", "analysis", "output")


def _require_number(value, name):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name} must be a number, got {value!r}")


def _require_int(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(f"{name} must be an integer, got {value!r}")

POLICY_VARIANTS = ("iid_uniform", "iid_weighted", "periodic", "fixed_trace",
                   "gilbert_regenerate")

GENERATOR_KINDS = ("regular", "ws", "ba", "gilbert", "star", "empty", "complete")


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated view of the experiment JSON document."""

    model: dict | None
    policy: dict
    epidemic: dict
    run: dict
    analysis: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)

    @classmethod
    def from_json_dict(cls, doc):
        if not isinstance(doc, dict):
            raise ConfigError("config must be a JSON object")
        unknown = set(doc) - set(_SECTIONS)
        if unknown:
            raise ConfigError(f"unknown config sections: {sorted(unknown)}")
        cfg = cls(model=doc.get("model"),
                  policy=doc.get("policy") or {},
                  epidemic=doc.get("epidemic") or {},
                  run=doc.get("run") or {},
                  analysis=doc.get("analysis") or {},
                  output=doc.get("output") or {})
        cfg.validate()
        return cfg

    @classmethod
    def load(cls, path):
        try:
            with open(path) as f:
                doc = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        return cls.from_json_dict(doc)

    def to_json_dict(self):
        doc = {}
        for name in _SECTIONS:
            value = getattr(self, name)
            if value:
                doc[name] = value
        return doc

    def override(self, **kwargs):
        """New config with non-None keyword overrides applied per section.

        Keys: beta, delta, T, reps, seed, init_fraction, mode,
        allow_reinfection, max_depth, norm, out, overwrite, workers.
        """
        sections = {"epidemic": dict(self.epidemic), "run": dict(self.run),
                    "analysis": dict(self.analysis), "output": dict(self.output)}
        where = {"beta": "epidemic", "delta": "epidemic",
                 "T": "run", "reps": "run", "seed": "run",
                 "init_fraction": "run", "mode": "run",
                 "allow_reinfection": "run", "workers": "run",
                 "max_depth": "analysis", "norm": "analysis",
                 "out": "output", "overwrite": "output"}
        rename = {"out": "path"}
        for key, value in kwargs.items():
            if value is None:
                continue
            if key not in where:
                raise ConfigError(f"unknown override {key!r}")
            if key == "beta":
                sections["epidemic"].pop("beta_range", None)
            sections[where[key]][rename.get(key, key)] = value
        cfg = replace(self, epidemic=sections["epidemic"], run=sections["run"],
                      analysis=sections["analysis"], output=sections["output"])
        cfg.validate()
        return cfg

    # -- validation ---------------------------------------------------------

    def validate(self):
        self._validate_model()
        self._validate_policy()
        self._validate_epidemic()
        self._validate_run()
        self._validate_analysis()

    def _validate_model(self):
        variant = self.policy.get("variant")
        if self.model is None:
            if variant != "gilbert_regenerate":
                raise ConfigError("config needs a model section "
                                  "(unless the policy regenerates its own graphs)")
            return
        sources = [k for k in ("graphs", "edge_lists") if self.model.get(k)]
        if len(sources) != 1:
            raise ConfigError("model must name exactly one source: "
                              "'graphs' or 'edge_lists'")
        for spec in self.model.get("graphs") or []:
            kind = spec.get("kind")
            if kind not in GENERATOR_KINDS:
                raise ConfigError(f"unknown generator kind {kind!r}")

    def _validate_policy(self):
        variant = self.policy.get("variant")
        if variant not in POLICY_VARIANTS:
            raise ConfigError(f"policy.variant must be one of {POLICY_VARIANTS}, "
                              f"got {variant!r}")
        if variant == "gilbert_regenerate":
            if "n" not in self.policy or "p" not in self.policy:
                raise ConfigError("gilbert_regenerate policy needs n and p")
        if variant == "fixed_trace" and not self.policy.get("indices"):
            raise ConfigError("fixed_trace policy needs an index list")
        if variant == "iid_weighted" and not self.policy.get("weights"):
            raise ConfigError("iid_weighted policy needs weights")

    def _validate_epidemic(self):
        has_beta = "beta" in self.epidemic
        rng = self.epidemic.get("beta_range")
        if has_beta == bool(rng):
            raise ConfigError("epidemic needs exactly one of beta or beta_range")
        if has_beta:
            _require_number(self.epidemic["beta"], "epidemic.beta")
        if rng is not None:
            try:
                lo, hi, count = rng["min"], rng["max"], rng["count"]
            except (KeyError, TypeError):
                raise ConfigError("beta_range needs min, max, count") from None
            _require_number(lo, "beta_range.min")
            _require_number(hi, "beta_range.max")
            _require_int(count, "beta_range.count")
            if not lo < hi:
                raise ConfigError("beta_range needs min < max")
            if count < 2:
                raise ConfigError("beta_range needs count >= 2")
        if "delta" not in self.epidemic:
            raise ConfigError("epidemic.delta is required")
        _require_number(self.epidemic["delta"], "epidemic.delta")

    def _validate_run(self):
        if "seed" not in self.run:
            raise ConfigError("run.seed is required (no silent nondeterminism)")
        _require_int(self.run["seed"], "run.seed")
        for key in ("T", "reps", "workers"):
            if self.run.get(key) is not None:
                _require_int(self.run[key], f"run.{key}")
        if self.run.get("init_fraction") is not None:
            _require_number(self.run["init_fraction"], "run.init_fraction")
        if not isinstance(self.run.get("allow_reinfection", False), bool):
            raise ConfigError("run.allow_reinfection must be a boolean")
        mode = self.run.get("mode", "mc")
        if mode not in ("mc", "meanfield"):
            raise ConfigError(f"run.mode must be 'mc' or 'meanfield', got {mode!r}")

    def _validate_analysis(self):
        norm = self.analysis.get("norm")
        if norm is not None and norm not in ("1", "2", "inf"):
            raise ConfigError(f"analysis.norm must be '1', '2' or 'inf', got {norm!r}")
        if self.analysis.get("max_depth") is not None:
            _require_int(self.analysis["max_depth"], "analysis.max_depth")

    # -- typed accessors ----------------------------------------------------

    @property
    def seed(self):
        return int(self.run["seed"])

    @property
    def delta(self):
        return float(self.epidemic["delta"])

    @property
    def horizon(self):
        return int(self.run.get("T", 500))

    @property
    def reps(self):
        return int(self.run.get("reps", 20))

    @property
    def init_fraction(self):
        return float(self.run.get("init_fraction", 0.2))

    @property
    def mode(self):
        return self.run.get("mode", "mc")

    @property
    def allow_reinfection(self):
        return bool(self.run.get("allow_reinfection", False))

    @property
    def max_depth(self):
        return int(self.analysis.get("max_depth", 4))

    @property
    def norm_id(self):
        return self.analysis.get("norm")

    @property
    def workers(self):
        w = self.run.get("workers")
        return int(w) if w else None


def _build_one_graph(spec, default_seed):
    kind = spec["kind"]
    seed = spec.get("seed", default_seed)
    try:
        if kind == "regular":
            return gen_regular(int(spec["n"]), int(spec["k"]), seed)
        if kind == "ws":
            return gen_watts_strogatz(int(spec["n"]), int(spec["k"]),
                                      float(spec["rewire"]), seed)
        if kind == "ba":
            return gen_barabasi_albert(int(spec["n"]), int(spec["m"]), seed)
        if kind == "gilbert":
            return gen_gilbert(int(spec["n"]), float(spec["p"]), seed)
        if kind == "star":
            return star_graph(int(spec["n"]), int(spec.get("hub", 0)))
        if kind == "empty":
            return empty_graph(int(spec["n"]))
        if kind == "complete":
            return complete_graph(int(spec["n"]))
    except KeyError as exc:
        raise ConfigError(f"generator {kind!r} is missing parameter {exc}") from None
    raise ConfigError(f"unknown generator kind {kind!r}")


def build_graphs(cfg):
    """Materialize the model's graph list (deterministic in run.seed)."""
    if cfg.model is None:
        return []
    if cfg.model.get("edge_lists"):
        graphs = []
        for path in cfg.model["edge_lists"]:
            try:
                with open(path) as f:
                    graphs.append(read_edge_list(f))
            except OSError as exc:
                raise ConfigError(f"cannot read edge list {path}: {exc}") from exc
        return graphs
    return [_build_one_graph(spec, _rng.substream_seed(cfg.seed, 1000 + i))
            for i, spec in enumerate(cfg.model["graphs"])]


def build_policy(cfg, graphs):
    """Construct the switching policy over the materialized graphs."""
    variant = cfg.policy["variant"]
    try:
        if variant == "iid_uniform":
            return IidUniform(tuple(graphs))
        if variant == "iid_weighted":
            return IidWeighted(tuple(graphs), tuple(cfg.policy["weights"]))
        if variant == "periodic":
            return Periodic(tuple(graphs))
        if variant == "fixed_trace":
            return FixedTrace(tuple(graphs), tuple(cfg.policy["indices"]))
        if variant == "gilbert_regenerate":
            return GilbertRegenerate(int(cfg.policy["n"]), float(cfg.policy["p"]))
    except EpiSwitchError as exc:
        raise ConfigError(f"bad policy: {exc}") from exc
    raise ConfigError(f"unknown policy variant {variant!r}")


def beta_values(cfg):
    """Scalar beta as a 1-list, or the inclusive linear beta grid."""
    if "beta" in cfg.epidemic:
        return [float(cfg.epidemic["beta"])]
    rng = cfg.epidemic["beta_range"]
    lo, hi, count = float(rng["min"]), float(rng["max"]), int(rng["count"])
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]
