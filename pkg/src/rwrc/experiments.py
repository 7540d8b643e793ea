"""Experiment drivers: annealed estimators, asymptotic checks, command line.

Annealed quantities average over the conductance law.  The single-site
non-exit average and the Laplace-transform identity are evaluated by
log-domain quadrature; general domains use plain Monte Carlo over prior
fields or importance sampling with per-edge scale-tilted proposals whose
medians track the time-rescaled optimal environment shape.  Inside the
annealed estimators quenched non-exit probabilities are always spectral,
never path Monte Carlo.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
import time as _time
from dataclasses import asdict, dataclass

import numpy as np

from .conductance import ConductanceField, field_to_json, optimal_profile, sample_field
from .domain import Domain, box_domain, build_domain
from .errors import (
    ArgumentOutOfRange,
    DegenerateWeights,
    DomainMismatch,
    DomainTooLarge,
    NonConvergence,
    NonPositiveArgument,
    RwrcError,
    UnsupportedDomain,
)
from .girsanov import girsanov_log_density
from .profiles import ProbabilityProfile
from .rates import joint_rate_J, k_const
from .spectral import eigen_tail, semigroup_nonexit
from .tail_law import TailLaw, log_density, quantile
from .transforms import log_laplace_transform
from .variational import brute_force_L, solve_L
from .walk import _simulate_batch, simulate


# ---------------------------------------------------------------------------
# configuration


@dataclass
class ImportanceSettings:
    cap_m: float | None = None    # None: cap chosen so zero-increment edges stay untilted
    r: float = 0.5                # tilt exponent, default 1/(1+eta)


@dataclass
class ExperimentConfig:
    domain: dict
    eta: float
    dcoef: float
    times: list
    trials: int
    inner_trials: int
    importance: ImportanceSettings
    deltas: list
    seed: int | None
    out: str | None

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        law = doc.get("law", {})
        eta = float(law.get("eta", 1.0))
        dcoef = float(law.get("D", 1.0))
        if eta <= 0 or dcoef <= 0:
            raise NonPositiveArgument("law parameters eta and D must be positive")
        isdoc = doc.get("is", {})
        r = isdoc.get("r")
        r = 1.0 / (1.0 + eta) if r is None else float(r)
        cap = isdoc.get("cap_M")
        cap = None if cap is None else float(cap)
        times = [float(t) for t in doc.get("times", [1.0])]
        deltas = sorted((float(x) for x in doc.get("deltas", [0.4, 0.2])), reverse=True)
        seed = doc.get("seed")
        return cls(
            domain=dict(doc.get("domain", {"type": "box", "d": 1, "half_width": 0})),
            eta=eta,
            dcoef=dcoef,
            times=times,
            trials=int(doc.get("trials", 10000)),
            inner_trials=int(doc.get("inner_trials", 200)),
            importance=ImportanceSettings(cap_m=cap, r=r),
            deltas=deltas,
            seed=None if seed is None else int(seed),
            out=doc.get("out"),
        )

    def to_dict(self) -> dict:
        return {
            "domain": dict(self.domain),
            "law": {"eta": self.eta, "D": self.dcoef},
            "times": list(self.times),
            "trials": self.trials,
            "inner_trials": self.inner_trials,
            "is": {"cap_M": self.importance.cap_m, "r": self.importance.r},
            "deltas": list(self.deltas),
            "seed": self.seed,
            "out": self.out,
        }

    def law(self) -> TailLaw:
        return TailLaw(self.eta, self.dcoef)

    def build_domain(self) -> Domain:
        return domain_from_spec(self.domain)


def domain_from_spec(spec: dict) -> Domain:
    kind = spec.get("type", "box")
    if kind == "box":
        return box_domain(int(spec.get("d", 1)), int(spec.get("half_width", 0)))
    if kind == "sites":
        return build_domain(spec["sites"], int(spec["d"]))
    raise UnsupportedDomain(f"unknown domain type {kind!r}")


def parse_domain_arg(text: str) -> dict:
    m = re.fullmatch(r"box(\d+)d:(\d+)", text.strip())
    if not m:
        raise ArgumentOutOfRange(f"cannot parse domain {text!r}, expected e.g. box1d:2")
    return {"type": "box", "d": int(m.group(1)), "half_width": int(m.group(2))}


# ---------------------------------------------------------------------------
# annealed estimators


@dataclass
class AnnealedEstimate:
    t: float
    estimate: float
    se: float
    log_estimate: float
    rescaled: float      # t**(-eta/(eta+1)) * log estimate
    method: str
    rel_se: float = 0.0
    ess: float | None = None


def _rescale(law: TailLaw, t: float, log_est: float) -> float:
    if t == 0.0:
        return 0.0
    return float(t ** (-law.eta / (law.eta + 1.0)) * log_est)


def annealed_nonexit_quadrature(law: TailLaw, t: float) -> AnnealedEstimate:
    """Exact annealed non-exit average for the single-site domain in d=1.

    The average factorizes over the two boundary edges, so it is the squared
    Laplace transform of one conductance at argument t.
    """
    if not (np.isfinite(t) and t >= 0):
        raise ArgumentOutOfRange(f"time must be finite and nonnegative, got {t!r}")
    log_est = 2.0 * log_laplace_transform(law, float(t))
    return AnnealedEstimate(
        t=float(t),
        estimate=float(np.exp(log_est)),
        se=0.0,
        log_estimate=log_est,
        rescaled=_rescale(law, float(t), log_est),
        method="quadrature",
    )


def _prior_fields(law: TailLaw, dom: Domain, n: int, rng: np.random.Generator) -> np.ndarray:
    u = rng.random((n, dom.n_edges))
    u = np.where(u > 0.0, u, np.nextafter(0.0, 1.0))
    return np.asarray(quantile(law, u))


def annealed_nonexit_mc(config: ExperimentConfig) -> list[AnnealedEstimate]:
    """Plain Monte Carlo: prior fields, spectral inner probability."""
    dom = config.build_domain()
    law = config.law()
    rng = _require_rng(config)
    out = []
    for t in config.times:
        weights = _prior_fields(law, dom, config.trials, rng)
        probs = np.array(
            [semigroup_nonexit(ConductanceField(dom, w), dom, t) for w in weights]
        )
        est = float(np.mean(probs))
        se = float(np.std(probs, ddof=1) / np.sqrt(config.trials))
        log_est = float(np.log(est)) if est > 0 else float("-inf")
        out.append(
            AnnealedEstimate(
                t=float(t),
                estimate=est,
                se=se,
                log_estimate=log_est,
                rescaled=_rescale(law, float(t), log_est),
                method="mc",
                rel_se=se / est if est > 0 else float("nan"),
            )
        )
    return out


def _tilt_scales(
    dom: Domain,
    g: ProbabilityProfile,
    law: TailLaw,
    t: float,
    cap_m: float | None,
    r: float,
) -> np.ndarray:
    """Per-edge proposal scales: the proposal median tracks t**-r times the
    optimal environment shape, and edges with no profile increment default to
    the untilted prior."""
    med = float(quantile(law, 0.5))
    if cap_m is None:
        cap_m = float(t**r) * med
    target = float(t) ** (-r) * optimal_profile(g, law, cap=cap_m).weights
    return target / med


def _sample_tilted(
    law: TailLaw, scales: np.ndarray, n: int, rng: np.random.Generator
) -> tuple[np.ndarray, np.ndarray]:
    """Draw fields from the scale-tilted proposal; return them with log weights."""
    u = rng.random((n, scales.shape[0]))
    u = np.where(u > 0.0, u, np.nextafter(0.0, 1.0))
    x = np.asarray(quantile(law, u)) * scales[None, :]
    log_prior = np.asarray(log_density(law, x)).sum(axis=1)
    log_prop = (np.asarray(log_density(law, x / scales[None, :])) - np.log(scales)[None, :]).sum(
        axis=1
    )
    return x, log_prior - log_prop


def _log_weighted_mean(logterm: np.ndarray) -> tuple[float, float]:
    """Log of the mean of exp(logterm) and the relative standard error."""
    n = logterm.shape[0]
    finite = np.isfinite(logterm)
    if not finite.any():
        return float("-inf"), float("nan")
    shift = float(logterm[finite].max())
    y = np.where(finite, np.exp(logterm - shift), 0.0)
    mean_y = float(np.mean(y))
    sd_y = float(np.std(y, ddof=1)) if n > 1 else 0.0
    return shift + float(np.log(mean_y)), sd_y / (mean_y * np.sqrt(n))


def _ess(logw: np.ndarray) -> float:
    lw = logw - logw.max()
    w = np.exp(lw)
    return float(w.sum() ** 2 / np.sum(w * w))


def annealed_nonexit_is(config: ExperimentConfig) -> list[AnnealedEstimate]:
    """Importance sampling with tilted fields, spectral inner probability."""
    dom = config.build_domain()
    law = config.law()
    rng = _require_rng(config)
    g_star = solve_L(dom, law.eta).minimizer
    out = []
    for t in config.times:
        if t == 0.0:
            out.append(AnnealedEstimate(0.0, 1.0, 0.0, 0.0, 0.0, "is", 0.0, float(config.trials)))
            continue
        scales = _tilt_scales(dom, g_star, law, t, config.importance.cap_m, config.importance.r)
        x, logw = _sample_tilted(law, scales, config.trials, rng)
        ess = _ess(logw)
        if ess < 10.0:
            raise DegenerateWeights(f"effective sample size {ess:.2f} is below 10")
        logp = np.full(config.trials, -np.inf)
        for i in range(config.trials):
            p = semigroup_nonexit(ConductanceField(dom, x[i]), dom, t)
            if p > 0:
                logp[i] = np.log(p)
        log_est, rel_se = _log_weighted_mean(logw + logp)
        est = float(np.exp(log_est))
        out.append(
            AnnealedEstimate(
                t=float(t),
                estimate=est,
                se=est * rel_se,
                log_estimate=log_est,
                rescaled=_rescale(law, float(t), log_est),
                method="is",
                rel_se=rel_se,
                ess=ess,
            )
        )
    return out


# ---------------------------------------------------------------------------
# asymptotic identities


@dataclass
class TauberianPoint:
    t: float
    value: float     # (1/t) log E exp(-t**((1+eta)/eta) * M * w)
    target: float    # -k_const * M**(eta/(1+eta))


def tauberian_check(law: TailLaw, m_const: float, t_list) -> list[TauberianPoint]:
    """Laplace-transform form of the lower-tail assumption along a time grid."""
    if not (np.isfinite(m_const) and m_const > 0):
        raise NonPositiveArgument(f"M must be positive, got {m_const!r}")
    target = float(-k_const(law) * m_const ** (law.eta / (1.0 + law.eta)))
    points = []
    for t in t_list:
        if not (np.isfinite(t) and t > 0):
            raise ArgumentOutOfRange(f"times must be positive, got {t!r}")
        s = float(t) ** ((1.0 + law.eta) / law.eta) * m_const
        val = log_laplace_transform(law, s) / float(t)
        points.append(TauberianPoint(float(t), float(val), target))
    return points


def ldp_point_check(config: ExperimentConfig, g: ProbabilityProfile) -> dict:
    """Annealed probability of tracking the occupation profile g.

    Estimates the average over environments of the probability that the walk
    survives to time t with normalized occupation within delta of g**2, by
    tilted-field importance sampling with an inner path Monte Carlo.  Reports
    rescaled values against the joint rate and checks the lower-bound side
    within the empirical delta slack.
    """
    dom = config.build_domain()
    if dom.n_sites > 3:
        raise DomainTooLarge("profile tracking check supports at most 3 sites")
    if g.domain is not dom and not (
        g.domain.d == dom.d and bool(np.all(g.domain.sites == dom.sites))
    ):
        raise DomainMismatch("profile domain does not match the config domain")
    law = config.law()
    rng = _require_rng(config)
    j_val = joint_rate_J(g, law)
    g2 = g.measure()
    q = law.eta / (law.eta + 1.0)
    deltas = config.deltas
    rows = []
    by_time = []
    ok_all = True
    for t in config.times:
        scales = _tilt_scales(dom, g, law, t, config.importance.cap_m, config.importance.r)
        x, logw = _sample_tilted(law, scales, config.trials, rng)
        ess = _ess(logw)
        fracs = np.zeros((len(deltas), config.trials))
        for i in range(config.trials):
            f = ConductanceField(dom, x[i])
            exited, _, occ = _simulate_batch(f, dom, t, config.inner_trials, rng, True)
            dist = np.linalg.norm(occ / t - g2[None, :], axis=1)
            for k, delta in enumerate(deltas):
                fracs[k, i] = np.mean(~exited & (dist <= delta))
        rescaled = {}
        for k, delta in enumerate(deltas):
            with np.errstate(divide="ignore"):
                log_frac = np.where(fracs[k] > 0, np.log(np.where(fracs[k] > 0, fracs[k], 1.0)), -np.inf)
            log_est, rel_se = _log_weighted_mean(logw + log_frac)
            resc = float(t ** (-q) * log_est)
            rescaled[delta] = (resc, rel_se)
            rows.append(
                {
                    "t": float(t),
                    "delta": float(delta),
                    "log_estimate": float(log_est),
                    "rescaled": resc,
                    "rel_se": float(rel_se),
                }
            )
        largest = deltas[0]
        resc_big, rel_se_big = rescaled[largest]
        slack = abs(rescaled[largest][0] - rescaled[deltas[-1]][0])
        tol = 3.0 * t ** (-q) * (rel_se_big if np.isfinite(rel_se_big) else 0.0)
        ok = bool(resc_big >= -j_val - slack - tol)
        ok_all = ok_all and ok
        by_time.append(
            {"t": float(t), "slack": float(slack), "rescaled": float(resc_big), "ess": ess, "ok": ok}
        )
    return {
        "rate_value": float(j_val),
        "profile": g.values.tolist(),
        "deltas": [float(d) for d in deltas],
        "rows": rows,
        "by_time": by_time,
        "lower_bound_ok": bool(ok_all),
    }


# ---------------------------------------------------------------------------
# command line


def _require_rng(config: ExperimentConfig) -> np.random.Generator:
    if config.seed is None:
        raise ArgumentOutOfRange("a seed is required for stochastic estimation")
    return np.random.default_rng(config.seed)


def _version() -> str:
    from rwrc import __version__

    return __version__


def _write_csv(path: str, header: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(header)
        w.writerows(rows)


def _summary_path(out: str) -> str:
    stem = os.path.splitext(out)[0] if out.endswith((".csv", ".json")) else out
    return stem + ".summary.json"


def _write_summary(out: str, config: ExperimentConfig, extra: dict, wall: float) -> None:
    doc = {
        "config": config.to_dict(),
        "version": _version(),
        "wall_time_s": wall,
    }
    doc.update(extra)
    with open(_summary_path(out), "w") as fh:
        json.dump(doc, fh, indent=2)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rwrc",
        description="Walks among heavy-tailed random conductances on finite domains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp):
        sp.add_argument("--config", help="JSON config file")
        sp.add_argument("--eta", type=float, help="tail exponent")
        sp.add_argument("--D", type=float, dest="dcoef", help="tail scale coefficient")
        sp.add_argument("--domain", help="domain shorthand, e.g. box1d:2")
        sp.add_argument("--times", help="comma-separated time grid")
        sp.add_argument("--t", type=float, help="single time, overrides --times")
        sp.add_argument("--trials", type=int, help="Monte Carlo trial count")
        sp.add_argument("--seed", type=int, help="RNG seed")
        sp.add_argument("--out", help="output path")
        return sp

    add_common(sub.add_parser("sample-field", help="draw one conductance field as JSON"))
    add_common(sub.add_parser("simulate", help="simulate one path and dump it as CSV"))

    sv = add_common(sub.add_parser("solve-variational", help="domain constant and minimizer"))
    sv.add_argument("--brute-force", action="store_true", help="also run the grid oracle")

    ne = add_common(sub.add_parser("nonexit", help="annealed non-exit estimates"))
    ne.add_argument(
        "--method", choices=("quadrature", "mc", "is"), default="quadrature"
    )

    et = add_common(sub.add_parser("eigen-tail", help="principal eigenvalue lower tail"))
    et.add_argument("--eps", help="comma-separated eps grid", default="0.01")
    et.add_argument("--method", choices=("quadrature", "mc"), default="quadrature")
    et.add_argument("--fields", type=int, default=2000, help="MC field count")

    tb = add_common(sub.add_parser("tauberian", help="Laplace-transform tail identity"))
    tb.add_argument("--M", type=float, default=1.0, dest="m_const")

    add_common(sub.add_parser("ldp-check", help="profile-tracking lower bound check"))

    gt = add_common(sub.add_parser("girsanov-test", help="reweighting normalization check"))
    gt.add_argument("--lo", type=float, default=0.5, help="lower edge of the target band")
    gt.add_argument("--hi", type=float, default=2.0, help="upper edge of the target band")
    return parser


def _config_from_args(args) -> ExperimentConfig:
    doc = {}
    if args.config:
        with open(args.config) as fh:
            doc = json.load(fh)
    doc.setdefault("law", {})
    if args.eta is not None:
        doc["law"]["eta"] = args.eta
    if args.dcoef is not None:
        doc["law"]["D"] = args.dcoef
    if args.domain is not None:
        doc["domain"] = parse_domain_arg(args.domain)
    if args.t is not None:
        doc["times"] = [args.t]
    elif args.times is not None:
        doc["times"] = [float(x) for x in args.times.split(",") if x.strip()]
    if args.trials is not None:
        doc["trials"] = args.trials
    if args.seed is not None:
        doc["seed"] = args.seed
    if args.out is not None:
        doc["out"] = args.out
    return ExperimentConfig.from_dict(doc)


def _estimate_rows(estimates: list[AnnealedEstimate]) -> list[list]:
    return [
        [e.t, e.estimate, e.se, e.log_estimate, e.rescaled, e.method]
        for e in estimates
    ]


def run_cli(argv) -> int:
    """Entry point; returns 0 on success, 1 on invalid input, 2 on numerical failure."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return 0 if not exc.code else 1
    started = _time.monotonic()
    try:
        config = _config_from_args(args)
        out = _dispatch(args, config, started)
    except (NonConvergence, DegenerateWeights) as exc:
        print(f"rwrc: numerical failure: {exc}", file=sys.stderr)
        return 2
    except (RwrcError, OSError, json.JSONDecodeError, KeyError) as exc:
        print(f"rwrc: invalid input: {exc}", file=sys.stderr)
        return 1
    return out


def _dispatch(args, config: ExperimentConfig, started: float) -> int:
    law = config.law()
    wall = lambda: _time.monotonic() - started  # noqa: E731

    if args.command == "sample-field":
        dom = config.build_domain()
        rng = _require_rng(config)
        f = sample_field(law, dom, rng)
        out = config.out or "field.json"
        with open(out, "w") as fh:
            fh.write(field_to_json(f))
        _write_summary(out, config, {"n_edges": dom.n_edges}, wall())
        print(f"sample-field: {dom.n_edges} weights -> {out}")
        return 0

    if args.command == "simulate":
        dom = config.build_domain()
        rng = _require_rng(config)
        f = sample_field(law, dom, rng)
        t = config.times[0]
        p = simulate(f, dom, t, rng)
        out = config.out or "path.csv"
        header = ["step", "time"] + [f"x{i}" for i in range(dom.d)]
        rows = [[0, 0.0, *dom.site_tuple(p.start)]]
        for i in range(p.n_jumps):
            rows.append([i + 1, p.jump_times[i], *dom.site_tuple(int(p.sites[i + 1]))])
        if p.exited:
            rows.append([p.n_jumps + 1, p.exit_time, *p.exit_point])
        _write_csv(out, header, rows)
        _write_summary(out, config, {"exited": p.exited, "jumps": p.n_jumps}, wall())
        status = f"exited at {p.exit_time:.6g}" if p.exited else f"survived to {t:g}"
        print(f"simulate: {p.n_jumps} jumps, {status} -> {out}")
        return 0

    if args.command == "solve-variational":
        dom = config.build_domain()
        res = solve_L(dom, law.eta)
        doc = {
            "L": res.value,
            "minimizer": res.minimizer.values.tolist(),
            "minimizers": [m.tolist() for m in res.minimizers],
            "iterations": res.iterations,
            "restarts": res.restarts,
        }
        if args.brute_force:
            doc["brute_force_L"] = brute_force_L(dom, law.eta).value
        out = config.out or "variational.json"
        doc.update({"config": config.to_dict(), "version": _version(), "wall_time_s": wall()})
        with open(out, "w") as fh:
            json.dump(doc, fh, indent=2)
        print(f"solve-variational: L={res.value:.9g} -> {out}")
        return 0

    if args.command == "nonexit":
        if args.method == "quadrature":
            dom = config.build_domain()
            if dom.n_sites != 1 or dom.d != 1:
                raise UnsupportedDomain("quadrature non-exit requires the single-site domain in d=1")
            estimates = [annealed_nonexit_quadrature(law, t) for t in config.times]
        elif args.method == "mc":
            estimates = annealed_nonexit_mc(config)
        else:
            estimates = annealed_nonexit_is(config)
        out = config.out or "nonexit.csv"
        _write_csv(out, ["t", "estimate", "se", "log_estimate", "rescaled", "method"], _estimate_rows(estimates))
        _write_summary(out, config, {"rows": len(estimates)}, wall())
        last = estimates[-1]
        print(f"nonexit[{args.method}]: t={last.t:g} rescaled={last.rescaled:.6g} -> {out}")
        return 0

    if args.command == "eigen-tail":
        dom = config.build_domain()
        eps_list = [float(x) for x in args.eps.split(",") if x.strip()]
        rng = _require_rng(config) if args.method == "mc" else None
        points = eigen_tail(law, dom, eps_list, method=args.method, n_fields=args.fields, rng=rng)
        out = config.out or "eigen_tail.csv"
        _write_csv(
            out,
            ["eps", "prob", "log_prob", "eps_eta_log_prob"],
            [[pt.eps, pt.prob, pt.log_prob, pt.scaled_log] for pt in points],
        )
        _write_summary(out, config, {"rows": len(points)}, wall())
        print(f"eigen-tail[{args.method}]: eps={points[-1].eps:g} scaled={points[-1].scaled_log:.6g} -> {out}")
        return 0

    if args.command == "tauberian":
        points = tauberian_check(law, args.m_const, config.times)
        out = config.out or "tauberian.csv"
        _write_csv(out, ["t", "value", "target"], [[p.t, p.value, p.target] for p in points])
        _write_summary(out, config, {"rows": len(points)}, wall())
        print(
            f"tauberian: M={args.m_const:g} t={points[-1].t:g} value={points[-1].value:.6g} "
            f"target={points[-1].target:.6g} -> {out}"
        )
        return 0

    if args.command == "ldp-check":
        dom = config.build_domain()
        g = solve_L(dom, law.eta).minimizer
        report = ldp_point_check(config, g)
        out = config.out or "ldp_check.json"
        report.update({"config": config.to_dict(), "version": _version(), "wall_time_s": wall()})
        with open(out, "w") as fh:
            json.dump(report, fh, indent=2)
        status = "ok" if report["lower_bound_ok"] else "violated"
        print(f"ldp-check: rate={report['rate_value']:.6g} lower bound {status} -> {out}")
        return 0 if report["lower_bound_ok"] else 2

    if args.command == "girsanov-test":
        report = _girsanov_report(config, args.lo, args.hi)
        out = config.out or "girsanov_test.json"
        report.update({"config": config.to_dict(), "version": _version(), "wall_time_s": wall()})
        with open(out, "w") as fh:
            json.dump(report, fh, indent=2)
        print(
            f"girsanov-test: mean={report['mean']:.6f} z={report['z']:.3f} "
            f"cocycle={report['cocycle_err']:.3g} -> {out}"
        )
        return 0 if report["ok"] else 2

    raise ArgumentOutOfRange(f"unknown command {args.command!r}")


def _girsanov_report(config: ExperimentConfig, lo: float, hi: float) -> dict:
    if not (0 < lo <= hi):
        raise ArgumentOutOfRange("the target band must satisfy 0 < lo <= hi")
    dom = config.build_domain()
    rng = _require_rng(config)
    t = config.times[0]
    psi = ConductanceField(dom, np.ones(dom.n_edges))
    phi = ConductanceField(dom, lo + (hi - lo) * rng.random(dom.n_edges))
    chi = ConductanceField(dom, lo + (hi - lo) * rng.random(dom.n_edges))
    vals = np.empty(config.trials)
    cocycle_err = 0.0
    antisym_err = 0.0
    check_paths = min(200, config.trials)
    for i in range(config.trials):
        p = simulate(psi, dom, t, rng)
        lp = girsanov_log_density(p, phi, psi)
        vals[i] = np.exp(lp)
        if i < check_paths:
            lq = girsanov_log_density(p, chi, phi)
            lr = girsanov_log_density(p, chi, psi)
            cocycle_err = max(cocycle_err, abs(lp + lq - lr))
            antisym_err = max(antisym_err, abs(lp + girsanov_log_density(p, psi, phi)))
    mean = float(np.mean(vals))
    se = float(np.std(vals, ddof=1) / np.sqrt(config.trials))
    z = (mean - 1.0) / se if se > 0 else 0.0
    ok = abs(z) <= 3.0 and cocycle_err <= 1e-12 and antisym_err <= 1e-12
    return {
        "t": float(t),
        "trials": config.trials,
        "mean": mean,
        "se": se,
        "z": float(z),
        "cocycle_err": float(cocycle_err),
        "antisym_err": float(antisym_err),
        "ok": bool(ok),
    }


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
