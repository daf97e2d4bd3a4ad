"""Single-binary command line front end.

One subcommand per module surface plus `verify`, which drives the full
property suite.  All output is machine-readable (JSON by default, CSV where a
flat table is more natural) and written atomically when a path is given.

Exit codes: 0 success, 1 property/check failure, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import csv
import io
import json
import math
import os
import random
import sys
import tempfile
from fractions import Fraction

import click

from . import amplifier as amp_mod
from . import counting, exponents, kloosterman, oscillatory, specfun, transforms, verify
from .arithmetic import DirichletCharacter, SquarefreeModulus

CONFIG_ENV_VAR = "SUPNORM_CONFIG"

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


# ---------------------------------------------------------------------------
# serialization helpers
# ---------------------------------------------------------------------------

def _jsonable(obj):
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, (exponents.Monomial, exponents.Bound)):
        return str(obj)
    if isinstance(obj, SquarefreeModulus):
        return int(obj)
    if isinstance(obj, DirichletCharacter):
        return {"modulus": int(obj.modulus),
                "exponents": _jsonable(dict(obj.component_exponents))}
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    if hasattr(obj, "item"):  # numpy scalar
        return obj.item()
    return obj


def _atomic_write(text: str, path: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(payload, output: str | None) -> None:
    text = json.dumps(_jsonable(payload), indent=2, sort_keys=True) + "\n"
    if output:
        _atomic_write(text, output)
    else:
        click.echo(text, nl=False)


def _parse_char(spec: str | None) -> DirichletCharacter:
    """Character spec: 'trivial:N' or 'quadratic:p' (default trivial mod 1)."""
    if not spec:
        return DirichletCharacter.trivial(1)
    kind, _, arg = spec.partition(":")
    try:
        n = int(arg)
    except ValueError:
        raise click.UsageError(f"bad character spec {spec!r}")
    if kind == "trivial":
        return DirichletCharacter.trivial(n)
    if kind == "quadratic":
        return DirichletCharacter.quadratic(n)
    raise click.UsageError(f"unknown character kind {kind!r}")


def _parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise click.UsageError(f"bad rational {text!r}")


output_option = click.option("--output", type=click.Path(dir_okay=False),
                             default=None, help="Write JSON here (atomic) instead of stdout.")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

@click.group()
@click.version_option(package_name="artifact", prog_name="supnorm")
def main():
    """Kernels, exponential sums, counting lemmas, and the exponent optimizer."""


@main.command("kloosterman")
@click.option("--m", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--c", type=int, required=True)
@click.option("--char", "char_spec", default=None,
              help="Twisting character, 'trivial:N' or 'quadratic:p'.")
@output_option
def kloosterman_cmd(m, n, c, char_spec, output):
    """Twisted Kloosterman sum with the reference square-root bound ratio."""
    chi = _parse_char(char_spec)
    try:
        q = kloosterman.KloostermanQuery(m, n, c, chi)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    rep = kloosterman.kloosterman_weil_check(q)
    val = rep["value"]
    _emit({"re": val.real, "im": val.imag, "abs": abs(val),
           "weil_ratio": rep["ratio"], "bound": rep["bound"]}, output)


@main.group("bessel", invoke_without_command=True)
@click.option("--fn", type=click.Choice(["J", "Kimag", "Ypair", "W", "kernel"]))
@click.option("--order", type=float, default=None, help="Real order for J.")
@click.option("--t", type=float, default=None, help="Spectral parameter.")
@click.option("--k", type=int, default=None, help="Holomorphic weight for W/kernel.")
@click.option("--sign", type=click.Choice(["+", "-"]), default="+",
              help="Kernel sign (kernel only).")
@click.option("--y", type=float, default=None)
@output_option
@click.pass_context
def bessel_cmd(ctx, fn, order, t, k, sign, y, output):
    """Evaluate one special function, or `bessel verify` for the full grid."""
    if ctx.invoked_subcommand is not None:
        return
    if fn is None or y is None:
        raise click.UsageError("--fn and --y are required")
    if fn == "J":
        if order is None:
            raise click.UsageError("--order required for J")
        value = specfun.bessel_j(order, y)
    elif fn == "Kimag":
        if t is None:
            raise click.UsageError("--t required for Kimag")
        value = specfun.bessel_k_imag(t, y)
    elif fn == "Ypair":
        if t is None:
            raise click.UsageError("--t required for Ypair")
        value = specfun.bessel_y_imag_pair(t, y)
    else:
        if k is not None:
            param = specfun.ArchimedeanParameter.holomorphic(k)
        elif t is not None:
            param = specfun.ArchimedeanParameter.maass(t)
        else:
            raise click.UsageError("--k or --t required for W/kernel")
        if fn == "W":
            value = specfun.whittaker_weight(param, y)
        else:
            value = specfun.voronoi_kernel(param, sign, y)
    _emit({"fn": fn, "y": y, "value": value}, output)


@bessel_cmd.command("verify")
@click.option("--output", type=click.Path(dir_okay=False), default=None,
              help="CSV path (atomic); stdout otherwise.")
def bessel_verify_cmd(output):
    """Run the special-function property grid; CSV of (property, constant, limit)."""
    rep = verify.sweep_specfun()
    rows = [
        ("derivative-recurrences", rep["recurrence_max_error"], 1e-6),
        ("integration-by-parts", rep["ibp_max_rel_error"], 1e-7),
        ("bessel-j-shape", rep["bessel_j_constant"], 50.0),
        ("bessel-k-shape", rep["bessel_k_constant"], 50.0),
        ("whittaker-shape", rep["whittaker_constant"], 50.0),
        ("transition-bound", rep["transition_constant"], 50.0),
    ]
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["property", "constant", "limit", "passed"])
    ok = True
    for name, const, limit in rows:
        passed = const <= limit
        ok = ok and passed
        writer.writerow([name, repr(float(const)), repr(limit), passed])
    if output:
        _atomic_write(buf.getvalue(), output)
    else:
        click.echo(buf.getvalue(), nl=False)
    if not ok:
        sys.exit(EXIT_FAILURE)


@main.command("transform")
@click.option("--a", "--A", "a_deg", type=int, required=True)
@click.option("--b", "--B", "b_deg", type=int, required=True)
@click.option("--k", type=int, default=None, help="Holomorphic weight (even).")
@click.option("--t", type=float, default=None, help="Spectral parameter.")
@click.option("--method", type=click.Choice(["closed", "quad", "both"]), default="both")
@output_option
def transform_cmd(a_deg, b_deg, k, t, method, output):
    """Spectral transform of the test function, closed form and/or quadrature."""
    if (k is None) == (t is None):
        raise click.UsageError("exactly one of --k / --t is required")
    try:
        tf = transforms.TestFunction(a_deg, b_deg)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    rep: dict = {"A": a_deg, "B": b_deg}
    closed = quad = None
    if k is not None:
        rep["k"] = k
        if method in ("closed", "both"):
            closed = transforms.dot_transform_closed_value(tf, k)
            rep["closed_exact_over_pi"] = transforms.dot_transform_closed(tf, k)
        if method in ("quad", "both"):
            quad = transforms.dot_transform_quadrature(tf, k)
    else:
        rep["t"] = t
        if method in ("closed", "both"):
            closed = transforms.tilde_transform_closed(tf, t)
        if method in ("quad", "both"):
            quad = transforms.tilde_transform_quadrature(tf, t)
    if closed is not None:
        rep["closed"] = closed
    if quad is not None:
        rep["quadrature"] = quad
    if closed is not None and quad is not None:
        rep["rel_error"] = abs(closed - quad) / abs(closed)
    _emit(rep, output)


@main.command("approx")
@click.option("--x", required=True, help="Real number or fraction p/q.")
@click.option("--h", "--H", "h_cap", type=float, required=True)
@output_option
def approx_cmd(x, h_cap, output):
    """Continued-fraction rational approximation with denominator cap H."""
    value = _parse_rational(x) if "/" in x else float(x)
    try:
        r = oscillatory.dirichlet_approximate(value, h_cap)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit({"x": float(value), "a": r.a, "q": r.q, "H": r.H, "beta": r.beta}, output)


@main.command("decay")
@click.option("--z", "--Z", "z_scale", type=float, required=True)
@click.option("--t", "--T", "t_scale", type=float, required=True)
@click.option("--alpha", required=True)
@click.option("--j", type=int, default=2)
@output_option
def decay_cmd(z_scale, t_scale, alpha, j, output):
    """Windowed exponential sum against the Z (T ||alpha||)^-j envelope."""
    aval = _parse_rational(alpha) if "/" in alpha else float(alpha)
    try:
        w = oscillatory.SmoothWindow(z_scale, t_scale)
        rep = oscillatory.lemma4_decay_check(w, aval, j)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(rep, output)


@main.command("vintegral")
@click.option("--kind", type=click.Choice(["holomorphic", "maass"]), required=True)
@click.option("--k", type=int, default=None)
@click.option("--t", type=float, default=None)
@click.option("--sign", type=click.Choice(["+", "-"]), default="+")
@click.option("--z", "--Z", "z_scale", type=float, required=True)
@click.option("--t-scale", "--T", type=float, required=True)
@click.option("--alpha", type=float, required=True)
@output_option
def vintegral_cmd(kind, k, t, sign, z_scale, t_scale, alpha, output):
    """Window-against-kernel integral with both envelope ratios."""
    if kind == "holomorphic":
        if k is None:
            raise click.UsageError("--k required for holomorphic")
        param = specfun.ArchimedeanParameter.holomorphic(k)
    else:
        if t is None:
            raise click.UsageError("--t required for maass")
        param = specfun.ArchimedeanParameter.maass(t)
    try:
        w = oscillatory.SmoothWindow(z_scale, t_scale)
        val = oscillatory.voronoi_integral(w, param, sign, alpha)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    rep = {"value": val, "bound1": oscillatory.lemma6_bound1(z_scale, param.t_star, alpha)}
    if alpha * math.sqrt(z_scale / 2) >= 2 * param.t_star:
        rep["bound2_j1"] = oscillatory.lemma6_bound2(z_scale, t_scale, param.t_star, alpha, 1)
    _emit(rep, output)


@main.group("count")
def count_cmd():
    """Lattice-point and matrix counts with their envelope ratios."""


def _counting_instance(c_scale, s, r, r_tilde, d1, d2, u, n_level, h_cap):
    mod = SquarefreeModulus.from_int(n_level)
    approx = oscillatory.dirichlet_approximate(Fraction(u, n_level), h_cap)
    return counting.CountingInstance(C=c_scale, S=s, R=r, R_tilde=r_tilde,
                                     d1=d1, d2=d2, u=u, N=mod, approx=approx)


_count_params = [
    click.option("--c-scale", "--C", "c_scale", type=int, required=True),
    click.option("--s", "--S", "s", type=int, required=True),
    click.option("--r", "--R", "r", type=int, required=True),
    click.option("--r-tilde", type=int, required=True),
    click.option("--d1", type=int, default=1),
    click.option("--d2", type=int, default=1),
    click.option("--u", type=int, required=True),
    click.option("--n-level", "--N", "n_level", type=int, required=True),
    click.option("--h-cap", "--H", "h_cap", type=float, default=None,
                 help="Denominator cap for the rational approximation (default N)."),
    click.option("--emit-elements", is_flag=True),
]


def _apply(options, fn):
    for opt in reversed(options):
        fn = opt(fn)
    return fn


def _make_count_command(name: str, which: str):
    @output_option
    def cmd(c_scale, s, r, r_tilde, d1, d2, u, n_level, h_cap, emit_elements, output):
        try:
            inst = _counting_instance(c_scale, s, r, r_tilde, d1, d2, u, n_level,
                                      h_cap if h_cap is not None else float(n_level))
            rep = counting.lemma10_bound_check(inst, which)
            elements = (counting.enumerate_A(inst) if which == "plain"
                        else counting.enumerate_A_square(inst))
        except counting.BoxLimitError as exc:
            click.echo(str(exc), err=True)
            sys.exit(EXIT_RESOURCE)
        except ValueError as exc:
            raise click.UsageError(str(exc))
        out = {"count": rep["count"], "bound": rep["bound"], "ratio": rep["ratio"]}
        if emit_elements:
            out["elements"] = elements
        _emit(out, output)

    cmd.__name__ = f"count_{name}"
    return count_cmd.command(name)(_apply(_count_params, cmd))


_make_count_command("A", "plain")
_make_count_command("Asq", "square")


@count_cmd.command("matrices")
@click.option("--x", type=float, required=True)
@click.option("--y", type=float, required=True)
@click.option("--n", type=int, required=True)
@click.option("--n-level", "--N", "n_level", type=int, required=True)
@click.option("--delta", type=float, required=True)
@click.option("--emit-elements", is_flag=True)
@output_option
def count_matrices_cmd(x, y, n, n_level, delta, emit_elements, output):
    """Determinant-n integer matrices with lower-left entry divisible by N."""
    try:
        inst = counting.MatrixCountInstance(x=x, y=y, n=n,
                                            N=SquarefreeModulus.from_int(n_level),
                                            delta=delta)
        split = counting.matrix_count_split(inst)
    except counting.BoxLimitError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_RESOURCE)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    out = {"M0": split["M0"], "Mstar": split["Mstar"], "M": split["M"],
           "excluded_negative": split["excluded_negative"],
           "ubound": counting.ubound_value(inst)}
    if emit_elements:
        out["elements"] = counting.enumerate_R_N_matrices(inst)
    _emit(out, output)


@count_cmd.command("reduce")
@click.option("--l1", type=int, required=True)
@click.option("--l2", type=int, required=True)
@click.option("--d1", type=int, default=1)
@click.option("--d2", type=int, default=1)
@click.option("--c", type=int, required=True)
@click.option("--u", type=int, required=True)
@click.option("--n-level", "--N", "n_level", type=int, required=True)
@click.option("--r1", "--R1", "r1_box", type=int, required=True)
@click.option("--r2", "--R2", "r2_box", type=int, required=True)
@output_option
def count_reduce_cmd(l1, l2, d1, d2, c, u, n_level, r1_box, r2_box, output):
    """Admissible residues for the congruence reduction, with multiplicities."""
    try:
        inst = counting.CongruenceReductionInstance(
            l1=l1, l2=l2, d1=d1, d2=d2, c=c, u=u,
            N=SquarefreeModulus.from_int(n_level), R1=r1_box, R2=r2_box)
        rep = counting.count_admissible_a(inst)
    except counting.BoxLimitError as exc:
        click.echo(str(exc), err=True)
        sys.exit(EXIT_RESOURCE)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    _emit(rep, output)


@main.command("amplifier")
@click.option("--l", "--L", "l_len", type=float, required=True)
@click.option("--n-level", "--N", "n_level", type=int, required=True)
@click.option("--seed", type=int, default=0)
@click.option("--is-variant", is_flag=True, help="Primes up to sqrt(L) instead of [L, 2L].")
@output_option
def amplifier_cmd(l_len, n_level, seed, is_variant, output):
    """Build an amplifier for a seeded random eigenvalue system; report its diagonal."""
    rng = random.Random(seed)
    mod = SquarefreeModulus.from_int(n_level)
    chi = DirichletCharacter.trivial(n_level)
    primes = [p for p in range(2, int(4 * l_len) + 2) if all(p % d for d in range(2, p))]
    sys_ = amp_mod.HeckeSystem(chi, {p: rng.uniform(-2, 2) for p in primes})
    try:
        build = amp_mod.build_is_amplifier if is_variant else amp_mod.build_amplifier
        amp = build(sys_, l_len, mod)
    except ValueError as exc:
        raise click.UsageError(str(exc))
    diag = amp_mod.amplifier_diagonal_value(sys_, amp)
    _emit({
        "L": amp.L,
        "support_primes": list(amp.lambda1),
        "support_squares": list(amp.lambda2),
        "coefficients": {str(l): v for l, v in sorted(amp.coefficients.items())},
        "diagonal": diag,
        "diagonal_exact": amp_mod.amplifier_diagonal_symbolic(sys_, amp),
    }, output)


@main.group("optimize", invoke_without_command=True)
@click.option("--theta", default="7/64", help="Progress-toward-Ramanujan exponent.")
@click.option("--emit-trace", is_flag=True, help="Include the full dominance trace.")
@output_option
@click.pass_context
def optimize_cmd(ctx, theta, emit_trace, output):
    """Exact-rational exponent balance; `optimize hybrid` for the combined form."""
    if ctx.invoked_subcommand is not None:
        return
    rep = exponents.theorem1_final(theta=_parse_rational(theta))
    out = {
        "H": str(rep["H"]), "L": str(rep["L"]), "q0": str(rep["q0"]),
        "exponent_N": rep["exponent_N"], "exponent_t_star": rep["exponent_t_star"],
        "second_form_N_exponent": rep["second_form_N_exponent"],
        "balanced_term_dominates": rep["balanced_term_dominates"],
        "constraints_satisfied": rep["constraints"]["satisfied"],
    }
    if emit_trace:
        out["trace"] = rep
    _emit(out, output)


@optimize_cmd.command("hybrid")
@output_option
def optimize_hybrid_cmd(output):
    """Weighted geometric-mean combination of the two final bounds."""
    _emit(exponents.theorem2_combination(), output)


@main.command("verify")
@click.option("--selector", default="*", help="fnmatch pattern over property ids.")
@click.option("--seed", type=int, default=None)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
              default=None, envvar=CONFIG_ENV_VAR,
              help=f"Config file (flat key=value); default ${CONFIG_ENV_VAR}.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv"]), default=None)
@output_option
def verify_cmd(selector, seed, config_path, fmt, output):
    """Run the deterministic property suite; exit 1 if any property fails."""
    cfg = verify.load_config(config_path, seed=seed, output_format=fmt,
                             output_path=output)
    report = verify.run_verify(cfg, selector)
    if cfg.output_format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["id", "fitted_constant", "limit", "passed"])
        for rec in report["properties"]:
            writer.writerow([rec["id"], repr(float(rec["fitted_constant"])),
                             repr(float(rec["limit"])), rec["passed"]])
        text = buf.getvalue()
        if cfg.output_path:
            _atomic_write(text, cfg.output_path)
        else:
            click.echo(text, nl=False)
    else:
        _emit(report, cfg.output_path)
    if not report["all_passed"]:
        sys.exit(EXIT_FAILURE)


if __name__ == "__main__":
    main()
