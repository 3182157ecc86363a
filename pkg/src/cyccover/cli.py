"""Command-line interface.

Exit codes: 0 success, 1 negative verdict, 2 precondition or parse error,
3 budget or size limit exceeded.
"""

from __future__ import annotations

import functools
import hashlib
import json
import math
import sys

import click

from . import construct
from .cover import first_uncovered, h_search, is_covering
from .cyclo import factor_xn_minus_1
from .engine import default_budget, default_threads
from .errors import NotCoprime, PreconditionError, ResourceError
from .gf import gf
from .isbell import build_isbell_group, verify_isbell
from .linalg import Subspace, full_space
from .polyring import format_codes


def _run(fn):
    """Map package errors onto exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except PreconditionError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except ResourceError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)

    return wrapper


def _output_option(choices=("text", "json")):
    return click.option("--output", type=click.Choice(choices), default=choices[0], show_default=True)


threads_option = click.option(
    "--threads", type=click.IntRange(min=1), default=None, help="Worker processes [default: CPU count]."
)
budget_option = click.option(
    "--budget",
    type=click.IntRange(min=1),
    default=None,
    help="Membership-test budget [default: $CYCCOVER_BUDGET or 10^8].",
)


def _threads(t):
    return default_threads() if t is None else t


def _budget(b):
    return default_budget() if b is None else b


def _read_subspace(path) -> Subspace:
    with open(path) as fh:
        return Subspace.from_text(fh.read())


def witness_hash(U: Subspace) -> str:
    return hashlib.sha256(U.to_text().encode()).hexdigest()


@click.group()
def main():
    """Cyclically covering subspaces of F_q^n."""


@main.command()
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True)
@_output_option()
@_run
def factor(q, n, output):
    """Factor X^n - 1 over GF(q) with cosets and idempotents."""
    gf(q)
    F = factor_xn_minus_1(q, n)
    if output == "json":
        click.echo(F.dumps())
        return
    click.echo(f"X^{n} - 1 over GF({q}): {len(F.factors)} factors")
    for c, f, u in zip(F.cosets.cosets, F.factors, F.idempotents):
        coset = " ".join(str(s) for s in c)
        click.echo(f"degree {f.degree}  factor {f}  coset {{{coset}}}  idempotent {u}")


def _emit_result(res, output):
    if output == "json":
        click.echo(res.dumps())
        return
    click.echo(f"h_{res.q}({res.n}) = {res.h}")
    click.echo(f"exhausted: {'yes' if res.exhausted else 'no'}")
    click.echo(f"candidates tested: {res.candidates_tested}")
    click.echo("witness:")
    click.echo(res.witness.to_text(), nl=False)


@main.command()
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True)
@threads_option
@budget_option
@_output_option()
@_run
def search(q, n, threads, budget, output):
    """Exact h_q(n) by exhaustive search."""
    gf(q)
    if n < 1:
        raise click.BadParameter("n must be positive", param_hint="--n")
    _emit_result(h_search(q, n, threads=_threads(threads), budget=_budget(budget)), output)


def _emit_report(rep, output, basis_out):
    if basis_out:
        with open(basis_out, "w") as fh:
            fh.write(rep.subspace.to_text())
    if output == "json":
        click.echo(rep.dumps())
        return
    where = f"F_{rep.subspace.field.q}^{rep.n}" if rep.ambient is None else f"a {rep.ambient.dim}-dim invariant subspace"
    click.echo(f"{rep.name} {json.dumps(rep.parameters, sort_keys=True)}")
    click.echo(f"codimension {rep.codim} in {where}")
    click.echo(f"verified: {'yes' if rep.verified else 'no'}")
    click.echo("basis:")
    click.echo(rep.subspace.to_text(), nl=False)


@main.group(name="construct")
def construct_group():
    """Explicit covering constructions."""


def _construct_options(fn):
    fn = click.option("--no-verify", "no_verify", is_flag=True, help="Skip the covering check.")(fn)
    fn = click.option("--basis-out", type=click.Path(dir_okay=False), default=None, help="Write the basis file here.")(fn)
    fn = _output_option()(fn)
    return fn


@construct_group.command(name="lemma21")
@click.option("--n", type=int, required=True)
@_construct_options
@_run
def c_odd(n, no_verify, basis_out, output):
    """Codimension-2 cover of F_2^n for odd n > 3."""
    _emit_report(construct.odd_cover(n, verify=not no_verify), output, basis_out)


@construct_group.command(name="product")
@click.option("--basis", "basis", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--m", type=int, required=True)
@_construct_options
@_run
def c_product(basis, m, no_verify, basis_out, output):
    """Lift a cover of F_q^n to F_q^(nm) with the same codimension."""
    U = _read_subspace(basis)
    _emit_report(construct.product_cover(U, m, verify=not no_verify), output, basis_out)


@construct_group.command(name="thm31")
@click.option("--q", type=int, required=True)
@click.option("--d", type=int, required=True)
@_construct_options
@_run
def c_field(q, d, no_verify, basis_out, output):
    """Codimension d-1 cover of F_q^(q^d - 1)."""
    _emit_report(construct.field_cover(q, d, verify=not no_verify), output, basis_out)


@construct_group.command(name="thm32")
@click.option("--q", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--d", type=int, required=True)
@click.option("--c", type=int, required=True)
@_construct_options
@_run
def c_orbit_rep(q, k, d, c, no_verify, basis_out, output):
    """Cover from one representative per shift orbit of V_1."""
    _emit_report(construct.orbit_rep_cover(q, k, d, c, verify=not no_verify), output, basis_out)


@construct_group.command(name="thm33")
@click.option("--q", type=int, required=True)
@click.option("--k", type=int, required=True)
@click.option("--d", type=int, required=True)
@_construct_options
@_run
def c_subfield(q, k, d, no_verify, basis_out, output):
    """Codimension kd cover built from a subfield of V_1."""
    _emit_report(construct.subfield_cover(q, k, d, verify=not no_verify), output, basis_out)


@construct_group.command(name="section4")
@click.option("--m", "m_list", type=int, multiple=True, required=True, help="Repeat for each m_i.")
@_construct_options
@_run
def c_idempotent_sum(m_list, no_verify, basis_out, output):
    """Span of idempotents covering a sum of field components over GF(2)."""
    _emit_report(construct.idempotent_sum_cover(list(m_list), verify=not no_verify), output, basis_out)


@main.command()
@click.option("--q", type=int, required=True)
@click.option("--n", type=int, required=True)
@click.option("--basis", type=click.Path(exists=True, dir_okay=False), required=True)
@_output_option()
@_run
def verify(q, n, basis, output):
    """Check whether a basis file spans a covering subspace."""
    U = _read_subspace(basis)
    if (U.field.q, U.n) != (q, n):
        raise PreconditionError(f"basis file is over F_{U.field.q}^{U.n}, expected F_{q}^{n}")
    rep = None if is_covering(U) else first_uncovered(U)
    if output == "json":
        click.echo(json.dumps({"q": q, "n": n, "covering": rep is None,
                               "uncovered": None if rep is None else format_codes(rep, q)}, sort_keys=True))
    elif rep is None:
        click.echo("COVERING")
    else:
        click.echo(f"NOT COVERING: {format_codes(rep, q)}")
    sys.exit(0 if rep is None else 1)


def constructions_for(q: int, n: int):
    """Applicable explicit constructions for F_q^n, unverified."""
    out = []
    d = 1
    while q**d - 1 < n:
        d += 1
    if q**d - 1 == n:
        out.append(lambda: construct.field_cover(q, d, verify=False))
    for k in range(1, n.bit_length() + 1):
        Q = q**k
        for dd in range(1, n.bit_length() + 1):
            m = (Q ** (dd + 1) - 1) // (Q - 1)
            if m == n and math.gcd(dd + 1, Q - 1) == 1:
                out.append(functools.partial(construct.subfield_cover, q, k, dd, verify=False))
            if m > n:
                break
    if q == 2 and n % 2 and n > 3:
        out.append(lambda: construct.odd_cover(n, verify=False))
    return out


def best_construction(q: int, n: int):
    """Highest-codimension applicable construction, verified; None if none apply."""
    best = None
    for build in constructions_for(q, n):
        rep = build()
        if best is None or rep.codim > best.codim:
            best = rep
    if best is None:
        return None
    if not is_covering(best.subspace):
        raise AssertionError(f"{best.name} is not covering")  # pragma: no cover
    best.verified = True
    return best


@main.command()
@click.option("--p", type=int, required=True)
@click.option("--b", type=int, required=True)
@click.option("--witness", type=click.Path(exists=True, dir_okay=False), default=None)
@threads_option
@budget_option
@_output_option()
@_run
def isbell(p, b, witness, threads, budget, output):
    """Permutation group from a cover of F_p^b and its fixed-point scan."""
    if math.gcd(p, b) != 1:
        raise NotCoprime(f"gcd(p={p}, b={b}) = {math.gcd(p, b)}")
    if witness:
        W = _read_subspace(witness)
    else:
        rep = best_construction(p, b)
        if rep is not None:
            W = rep.subspace
        else:
            W = h_search(p, b, threads=_threads(threads), budget=_budget(budget)).witness
    report = verify_isbell(build_isbell_group(p, b, W), p)
    if output == "json":
        click.echo(report.dumps())
        return
    click.echo(f"degree {report.degree} = {p}^{report.a} * {report.b}, |H| = {report.group_order}")
    click.echo(f"transitive: {'yes' if report.transitive else 'no'}")
    click.echo(f"fixed-point-free {p}-power element: {'found' if report.fpf_p_power_found else 'none'}")
    click.echo(report.summary())
    if not report.valid:
        sys.exit(1)


@main.command()
@click.option("--q", type=int, required=True)
@click.option("--n-max", type=click.IntRange(min=1), required=True)
@threads_option
@budget_option
@_output_option(("csv", "json"))
@_run
def table(q, n_max, threads, budget, output):
    """h_q(n) for n = 1..n_max, falling back to constructions past the budget."""
    gf(q)
    rows = []
    for n in range(1, n_max + 1):
        try:
            res = h_search(q, n, threads=_threads(threads), budget=_budget(budget))
            rows.append((n, res.h, "search", witness_hash(res.witness)))
        except ResourceError:
            try:
                rep = best_construction(q, n)
            except ResourceError:
                rep = None
            U = rep.subspace if rep else full_space(gf(q), n)
            rows.append((n, U.codim, "lower-bound-only", witness_hash(U)))
    if output == "json":
        keys = ("n", "h", "method", "witness_hash")
        click.echo(json.dumps([dict(zip(keys, r)) for r in rows], indent=2))
        return
    click.echo("n,h,method,witness_hash")
    for r in rows:
        click.echo(",".join(str(x) for x in r))


if __name__ == "__main__":  # pragma: no cover
    main()
