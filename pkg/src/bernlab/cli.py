"""Command-line front end.

Exit codes: 0 success, 2 parameter or hypothesis error, 3 numerical error,
64 usage error.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

import numpy as np

from . import __version__, approximation, experiments, kernels, norms, valence
from .errors import BernlabError, NumericalError, ParameterError
from .functions import from_spec
from .quadrature import CONVENTIONS, DiskQuadrature, RadialPanels, DEFAULT_G, default_angular

EXIT_OK, EXIT_PARAM, EXIT_NUMERIC, EXIT_USAGE = 0, 2, 3, 64

FUNCTIONALS = ("hardy", "a1-deriv", "ap-deriv", "besov", "lp", "pommerenke", "bmoa")

log = logging.getLogger("bernlab")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _manifest(command, args, started):
    params = {k: v for k, v in vars(args).items() if k not in ("handler",)}
    return {
        "command": command,
        "params": params,
        "seed": params.get("seed"),
        "version": __version__,
        "kernel_backend": kernels.BACKEND,
        "conventions": dict(CONVENTIONS),
        "timing_seconds": round(time.perf_counter() - started, 6),
    }


def _write_json(path, obj):
    text = json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"
    if path is None or str(path) == "-":
        sys.stdout.write(text)
        return
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _json_default(o):
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, np.generic):
        return o.item()
    if isinstance(o, np.ndarray):
        return o.tolist()
    return str(o)


def _emit(args, command, payload, started):
    out = getattr(args, "out", None)
    manifest = _manifest(command, args, started)
    if out and out != "-":
        _write_json(out, payload)
        _write_json(str(out) + ".manifest.json", manifest)
    else:
        _write_json(None, {"result": payload, "manifest": manifest})


def _load_function(path):
    try:
        spec = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ParameterError(f"cannot read function spec {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParameterError(f"function spec {path} is not valid JSON: {e}") from None
    if not isinstance(spec, dict):
        raise ParameterError("function spec must be a JSON object")
    try:
        return from_spec(spec)
    except (KeyError, TypeError, IndexError) as e:
        raise ParameterError(f"malformed function spec: {e!r}") from None


def _need(value, flag, functional):
    if value is None:
        raise ParameterError(f"--{flag} is required for functional {functional!r}")
    return value


def cmd_norm(args):
    started = time.perf_counter()
    f = _load_function(args.function)
    fn = args.functional
    M = args.angular
    radial = RadialPanels(args.panels, DEFAULT_G) if args.panels else RadialPanels()

    def quad(gamma=0.0):
        return DiskQuadrature(radial, M or default_angular(f.degree), gamma)

    if fn == "hardy":
        rep = norms.hardy_norm(f, _need(args.p, "p", fn), M)
    elif fn == "a1-deriv":
        rep = norms.bergman_deriv_norm(f, 1, quad())
    elif fn == "ap-deriv":
        rep = norms.bergman_deriv_norm(f, _need(args.p, "p", fn), quad())
    elif fn == "besov":
        s, a = _need(args.sigma, "sigma", fn), _need(args.alpha, "alpha", fn)
        rep = norms.besov_seminorm(f, s, a, quad((1 - a) * s - 1))
    elif fn == "lp":
        rep = norms.littlewood_paley_norm(f, _need(args.p, "p", fn), M, radial)
    elif fn == "pommerenke":
        rep = norms.pommerenke_mixed_norm(f, _need(args.p, "p", fn), M, radial)
    else:
        rep = norms.bmoa_surrogate(f, M)
    _emit(args, "norm", rep.to_dict(), started)
    print(f"{rep.functional}: {rep.value!r} (error estimate {rep.error_estimate:.3e})", file=sys.stderr)


def _sweep_config(args):
    n_list = experiments.parse_n_list(args.n) if args.n else None
    r_list = [float(x) for x in args.r_list.split(",")] if args.r_list else [0.5, 0.9, 0.99]
    return experiments.SweepConfig(
        theorem=args.theorem, family=args.family, n_list=n_list, seed=args.seed, p=args.p,
        sigma=args.sigma, alpha=args.alpha, K=args.K, g=args.g, r_list=r_list,
        J=args.panels, M=args.angular,
    )


def cmd_sweep(args):
    started = time.perf_counter()
    cfg = _sweep_config(args)
    res = experiments.run_sweep(cfg)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"theorem-{cfg.theorem}-{cfg.family}"
    (out / f"{stem}.csv").write_bytes(res.to_csv().encode("utf-8"))
    _write_json(out / f"{stem}.json", res.to_dict())
    _write_json(out / f"{stem}.manifest.json", _manifest("sweep", args, started))
    if args.plot:
        try:
            res.plot_svg(out / f"{stem}.svg")
        except Exception as e:  # plots never affect the exit status
            log.warning("plot skipped: %s", e)
    fit = res.fit
    summary = f"{len(res.rows)} rows -> {out / (stem + '.csv')}"
    if fit:
        summary += f"; fit C={fit.C:.4g} beta={fit.beta:.4g} gamma={fit.gamma:.4g} residual={fit.residual:.3g}"
    else:
        summary += f"; fit skipped ({res.fit_skipped})"
    print(summary, file=sys.stderr)


def cmd_valence(args):
    started = time.perf_counter()
    f = _load_function(args.function)
    kw = {"rho": args.rho, "seed": args.seed}
    prof = valence.mean_valence(f, args.R, **kw)
    payload = {"R": args.R, "mean_valence": prof.mean_valence, "check_value": prof.check_value,
               "n_bound": prof.n_bound, "perturbed_nodes": prof.perturbed}
    if args.claim is not None:
        cert = valence.certify_mean_valent(f, args.claim, [args.R], **kw)
        payload["certificate"] = cert.to_dict()
    _emit(args, "valence", payload, started)
    if args.csv:
        Path(args.csv).write_bytes(prof.to_csv().encode("utf-8"))
    verdict = ""
    if args.claim is not None:
        verdict = " pass" if payload["certificate"]["passed"] else " FAIL"
    print(f"p(R={args.R}) = {prof.mean_valence!r}{verdict}", file=sys.stderr)


def cmd_hayman(args):
    started = time.perf_counter()
    f = _load_function(args.function)
    n_bound = args.n if args.n is not None else f.degree
    w = experiments.hayman_witness_search(f, args.r, args.lam, n_bound, args.angular)
    _emit(args, "hayman", w.to_dict(), started)
    if w.found:
        print(f"witness r~ = {w.r_tilde!r}: lhs {w.lhs:.6g} <= rhs {w.rhs:.6g}", file=sys.stderr)
    else:
        print(f"no witness; minimal ratio {w.min_ratio:.6g}", file=sys.stderr)
        raise NumericalError("Hayman witness search failed")


def cmd_counterexample(args):
    started = time.perf_counter()
    _, rep = approximation.littlewood_counterexample(args.phi, args.blocks)
    _emit(args, "counterexample", rep.to_dict(), started)
    if args.csv:
        Path(args.csv).write_bytes(rep.to_csv().encode("utf-8"))
    status = ", ".join(f"{k}={'pass' if v else 'FAIL'}" for k, v in rep.certificates.items())
    print(status, file=sys.stderr)


def _load_coeffs(path):
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise ParameterError(f"cannot read coefficients {path}: {e}") from None
    except json.JSONDecodeError as e:
        raise ParameterError(f"coefficient file {path} is not valid JSON: {e}") from None
    if isinstance(data, list):
        data = {"coeffs": data}
    if "lacunary_terms" in data:
        terms = [(int(t[0]), complex(t[1], t[2] if len(t) > 2 else 0.0)) for t in data["lacunary_terms"]]
        return approximation.CoeffFunction.from_lacunary(terms, data.get("N"), data.get("tail_mass", 0.0))
    coeffs = [complex(*c) if isinstance(c, list) else complex(c) for c in data["coeffs"]]
    return approximation.CoeffFunction(coeffs, lacunary=bool(data.get("lacunary", False)),
                                       tail_mass=float(data.get("tail_mass", 0.0)))


def cmd_inverse(args):
    started = time.perf_counter()
    f = _load_coeffs(args.coeffs)
    phi = approximation.make_phi(args.phi) if args.phi else None
    diag = approximation.inverse_series_test(f, args.weight, p=args.p, phi=phi)
    _emit(args, "inverse", diag.to_dict(), started)
    print(f"{diag.verdict} (model {diag.model}, rate {diag.rate:.4g}, partial sum {diag.partial_sum:.6g})",
          file=sys.stderr)


def build_parser():
    p = _Parser(prog="bernlab", description="Numerical laboratory for integral means of derivatives on the disk.")
    p.add_argument("--version", action="version", version=f"bernlab {__version__}")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("norm", help="compute one functional of a function")
    s.add_argument("--function", required=True, help="function-spec JSON file")
    s.add_argument("--functional", required=True, choices=FUNCTIONALS)
    s.add_argument("--p", type=float)
    s.add_argument("--sigma", type=float)
    s.add_argument("--alpha", type=float)
    s.add_argument("--panels", type=int, help="radial refinement depth J")
    s.add_argument("--angular", type=int, help="angles per circle M")
    s.add_argument("--out", help="output JSON (stdout when omitted)")
    s.set_defaults(handler=cmd_norm)

    s = sub.add_parser("sweep", help="run a theorem sweep over a family")
    s.add_argument("--theorem", required=True, choices=experiments.THEOREMS)
    s.add_argument("--family", required=True, choices=experiments.FAMILIES)
    s.add_argument("--n", help="a..b, 2^a..2^b or a comma list")
    s.add_argument("--p", type=float)
    s.add_argument("--sigma", type=float)
    s.add_argument("--alpha", type=float)
    s.add_argument("--K", type=float)
    s.add_argument("--g", default="1", choices=experiments.G_CHOICES)
    s.add_argument("--r-list", dest="r_list", help="comma list of radii for lemma32")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--panels", type=int)
    s.add_argument("--angular", type=int)
    s.add_argument("--plot", action="store_true")
    s.add_argument("--out", required=True, help="output directory")
    s.set_defaults(handler=cmd_sweep)

    s = sub.add_parser("valence", help="area-mean valence and the mean n-valence check")
    s.add_argument("--function", required=True)
    s.add_argument("--R", type=float, required=True)
    s.add_argument("--claim", type=float)
    s.add_argument("--rho", type=float, default=valence.DEFAULT_RHO)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--csv", help="write the (w_re, w_im, count) grid here")
    s.add_argument("--out")
    s.set_defaults(handler=cmd_valence)

    s = sub.add_parser("hayman", help="search a Hayman radius r~ in [2r-1, r]")
    s.add_argument("--function", required=True)
    s.add_argument("--r", type=float, required=True)
    s.add_argument("--lambda", dest="lam", type=float, required=True)
    s.add_argument("--n", type=float, help="valence bound (default: degree)")
    s.add_argument("--angular", type=int)
    s.add_argument("--out")
    s.set_defaults(handler=cmd_hayman)

    s = sub.add_parser("counterexample", help="Littlewood-type lacunary counterexample")
    s.add_argument("--phi", default="log", choices=sorted(approximation._BUILTIN_PHI))
    s.add_argument("--blocks", type=int, default=6)
    s.add_argument("--csv", help="write the per-block table here")
    s.add_argument("--out")
    s.set_defaults(handler=cmd_counterexample)

    s = sub.add_parser("inverse", help="convergence diagnosis of the E_n series")
    s.add_argument("--coeffs", required=True, help="JSON: list of [re, im], or {coeffs|lacunary_terms, tail_mass}")
    s.add_argument("--weight", default="sqrtlog", choices=("sqrtlog", "power"))
    s.add_argument("--p", type=float)
    s.add_argument("--phi", choices=sorted(approximation._BUILTIN_PHI))
    s.add_argument("--out")
    s.set_defaults(handler=cmd_inverse)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.handler(args)
    except ParameterError as e:
        print(f"bernlab: parameter error: {e}", file=sys.stderr)
        return EXIT_PARAM
    except (NumericalError, BernlabError) as e:
        print(f"bernlab: numerical error: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
