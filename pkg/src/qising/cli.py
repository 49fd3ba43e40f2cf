"""Command-line front end: reproducible table-emitting subcommands.

Every output starts with a comment header echoing the resolved model
constants, so a run is fully described by its own artifact.  Exit codes:
0 success, 1 computational failure, 2 usage error.
"""

from __future__ import annotations

import csv
import io
import json
import math
import sys

import click
import numpy as np

from . import coding, jacobian, ldp, measure, oracle, stats
from .params import new_params, parse_theta, parse_word, word_str


def _params_from(theta_text):
    try:
        return new_params(parse_theta(theta_text))
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


def _word_arg(text):
    try:
        return parse_word(text)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None


def _config_header(params, extra=None):
    cfg = {
        "theta": params.theta,
        "beta1": params.beta1,
        "gamma": params.gamma,
        "p": params.p,
    }
    if extra:
        cfg.update(extra)
    return cfg


def _emit(rows, fieldnames, config, fmt, output):
    """Write rows as CSV (with # config header) or JSON {config, rows}."""
    if fmt == "json":
        text = json.dumps({"config": config, "rows": rows}, indent=2) + "\n"
    else:
        buf = io.StringIO()
        for key, value in config.items():
            if isinstance(value, float):
                buf.write(f"# {key}={value:.17g}\n")
            else:
                buf.write(f"# {key}={value}\n")
        writer = csv.DictWriter(buf, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow({k: (f"{v:.17g}" if isinstance(v, float) else v)
                             for k, v in row.items()})
        text = buf.getvalue()
    if output:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _parse_range(spec):
    lo, hi, step = (float(x) for x in spec.split(":"))
    count = int(round((hi - lo) / step)) + 1
    return [lo + i * step for i in range(count)]


def _parse_obs(spec):
    a1, a2 = (float(x) for x in spec.split(","))
    return ldp.Observable(a1, a2)


format_option = click.option("--format", "fmt", type=click.Choice(["csv", "json"]),
                             default="csv", show_default=True)
output_option = click.option("--output", default=None, help="Output path (default stdout).")


@click.group()
def main():
    """Zero-temperature spin-chain measure: evaluation and diagnostics."""


@main.command()
@click.option("--theta", required=True)
@click.option("--beta", type=float, default=None,
              help="Also print the finite-temperature probability.")
@click.argument("word")
def cylinder(theta, beta, word):
    """Print mu(WORD), and the finite-beta value when --beta is given."""
    params = _params_from(theta)
    w = _word_arg(word)
    value = measure.mu(params, w)
    if beta is not None:
        finite = oracle.finite_beta_prob_subset(params, beta, w)
        click.echo(f"{value:.17g} {finite:.17g}")
    else:
        click.echo(f"{value:.17g}")


@main.command()
@click.option("--theta", default="pi/6", show_default=True)
@click.option("--n", type=int, default=8, show_default=True)
@click.option("--perturb", type=float, default=0.0,
              help="Test-only: offset recursion values to exercise failure.")
def verify(theta, n, perturb):
    """Run the oracle-vs-recursion and measure-structure checks."""
    params = _params_from(theta)
    failures = 0

    def report(name, ok, detail):
        nonlocal failures
        click.echo(f"{'PASS' if ok else 'FAIL'} {name} ({detail})")
        failures += 0 if ok else 1

    worst = 0.0
    for length in range(1, n + 1):
        table = measure.enumerate_cylinders(params, length)
        for word, prob in table.items():
            ref = oracle.zero_temp_prob_trace(params, word)
            worst = max(worst, abs(prob + perturb - ref))
    report("oracle-equivalence", worst <= 1e-12, f"max |err| = {worst:.3g}, n <= {n}")

    worst = 0.0
    for length in range(1, min(n, 11) + 1):
        table = measure.enumerate_cylinders(params, length)
        for word, prob in table.items():
            prob += perturb
            station = measure.mu(params, (1,) + word) + measure.mu(params, (2,) + word)
            consist = measure.mu(params, word + (1,)) + measure.mu(params, word + (2,))
            rev = measure.mu(params, word[::-1])
            worst = max(worst, abs(station - prob), abs(consist - prob), abs(rev - prob))
    report("stationarity/consistency/reversal", worst <= 1e-14,
           f"max |err| = {worst:.3g}")

    obs = ldp.Observable(1.0, 0.0)
    worst = 0.0
    for order in range(0, 9):
        for t in np.linspace(-3, 3, 7):
            direct = ldp.q_direct(params, obs, order, t) + perturb
            closed = ldp.q_recursive(params, obs, order, t)
            worst = max(worst, abs(direct - closed) / abs(closed))
    report("q-direct-vs-closed", worst <= 1e-10, f"max rel err = {worst:.3g}")

    if failures:
        sys.exit(1)


@main.command("free-energy")
@click.option("--theta", required=True)
@click.option("--a", "obs_spec", required=True, help="Observable values, e.g. 1,0")
@click.option("--t-range", default="-3:3:0.1", show_default=True)
@format_option
@output_option
def free_energy_cmd(theta, obs_spec, t_range, fmt, output):
    """Emit the (t, c(t), c'(t)) table."""
    params = _params_from(theta)
    obs = _parse_obs(obs_spec)
    curve = ldp.free_energy_curve(params, obs, _parse_range(t_range))
    rows = [{"t": float(t), "c": float(c), "dc": float(dc)}
            for t, c, dc in zip(curve.t, curve.c, curve.dc)]
    _emit(rows, ["t", "c", "dc"],
          _config_header(params, {"a1": obs.a1, "a2": obs.a2}), fmt, output)


@main.command()
@click.option("--theta", required=True)
@click.option("--a", "obs_spec", required=True)
@click.option("--s", type=float, default=None, help="Single evaluation point.")
@click.option("--s-range", default=None, help="Grid lo:hi:step.")
@format_option
@output_option
def rate(theta, obs_spec, s, s_range, fmt, output):
    """Emit the (s, I(s)) table for the large-deviation rate function."""
    params = _params_from(theta)
    obs = _parse_obs(obs_spec)
    if s is None and s_range is None:
        raise click.UsageError("give --s or --s-range")
    grid = [s] if s is not None else _parse_range(s_range)
    rows = [{"s": float(si), "I": ldp.rate_function(params, obs, si)} for si in grid]
    _emit(rows, ["s", "I"],
          _config_header(params, {"a1": obs.a1, "a2": obs.a2}), fmt, output)


@main.command("jacobian")
@click.option("--theta", required=True)
@format_option
@output_option
@click.argument("word")
def jacobian_cmd(theta, fmt, output, word):
    """Emit the finite-depth ratio trace along WORD as (n, ratio)."""
    params = _params_from(theta)
    trace = jacobian.jacobian_trace(params, _word_arg(word))
    rows = [{"n": i + 1, "ratio": float(r)} for i, r in enumerate(trace.ratios)]
    _emit(rows, ["n", "ratio"], _config_header(params, {"word": word}), fmt, output)


@main.command("classify")
@click.option("--theta", required=True)
@click.option("--epsilon", type=float, default=1e-6, show_default=True)
@click.option("--max-depth", type=int, default=200, show_default=True)
@format_option
@output_option
@click.argument("words", nargs=-1, required=True)
def classify_cmd(theta, epsilon, max_depth, fmt, output, words):
    """Classify WORDS by the limit of their truncated Jacobian expansion."""
    params = _params_from(theta)
    rows = []
    for word in words:
        label, depth = jacobian.classify(params, _word_arg(word), epsilon, max_depth)
        rows.append({"word": word, "label": label.value, "depth_used": depth})
    _emit(rows, ["word", "label", "depth_used"], _config_header(params), fmt, output)


@main.command()
@click.argument("word")
def code(word):
    """Print the k, m, w and reduced-w lines of the recoding pipeline."""
    w = _word_arg(word)
    m = coding.to_ab(w)
    ab_word, leftover = coding.to_alphabeta(m)
    click.echo(f"k: {word_str(w)}")
    click.echo(f"m: {m}")
    click.echo(f"w: {ab_word}" + (f" (held back: {leftover})" if leftover else ""))
    click.echo(f"reduced: {coding.reduce_word(ab_word)}")


@main.command()
@click.option("--theta", required=True)
@click.option("--epsilon", type=float, default=1e-6, show_default=True)
@click.option("--max-depth", type=int, default=200, show_default=True)
@click.option("--coords", type=int, default=None, help="Number of output coordinates.")
@format_option
@output_option
@click.argument("word")
def conjugacy(theta, epsilon, max_depth, coords, fmt, output, word):
    """Emit the conjugacy coordinates of WORD as (j, c_j, status)."""
    params = _params_from(theta)
    out = coding.conjugacy_h(params, _word_arg(word), epsilon, max_depth, coords)
    rows = [{"j": j,
             "c_j": "" if c is None else c,
             "status": "unresolved" if c is None else "resolved"}
            for j, c in enumerate(out.labels)]
    _emit(rows, ["j", "c_j", "status"], _config_header(params), fmt, output)


@main.command()
@click.option("--theta", required=True)
@click.option("--abcd", required=True, help="Boundary symbols, e.g. 1,2,2,1")
@click.option("--n", type=int, required=True)
@format_option
@output_option
def mixing(theta, abcd, n, fmt, output):
    """Emit the exact non-mixing defect report for the given boundary."""
    params = _params_from(theta)
    a, b, c, d = (int(x) for x in abcd.split(","))
    rep = stats.mixing_defect(params, a, b, c, d, n)
    rows = [{"a": a, "b": b, "c": c, "d": d, "n": n,
             "exact_sum": rep.exact_sum, "product": rep.product,
             "defect": rep.defect, "predicted": rep.predicted}]
    _emit(rows, list(rows[0].keys()), _config_header(params), fmt, output)


@main.command("sample")
@click.option("--theta", required=True)
@click.option("--n", type=int, required=True)
@click.option("--count", type=int, default=1, show_default=True)
@click.option("--seed", type=int, required=True)
@format_option
@output_option
def sample_cmd(theta, n, count, seed, fmt, output):
    """Emit `count` words of length n sampled exactly from the measure."""
    params = _params_from(theta)
    words, probs = measure.sample_many(params, seed, n, count)
    rows = [{"index": i, "word": word_str(words[i]), "probability": float(probs[i])}
            for i in range(count)]
    _emit(rows, ["index", "word", "probability"],
          _config_header(params, {"seed": seed, "n": n}), fmt, output)


def run():
    try:
        main(standalone_mode=False)
    except click.UsageError as exc:
        exc.show()
        sys.exit(2)
    except click.exceptions.Abort:
        sys.exit(2)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except SystemExit:
        raise
    except Exception as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    run()
