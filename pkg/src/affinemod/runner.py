"""Execute parsed scripts against the library and collect reports."""

import dataclasses
import time
from fractions import Fraction

from . import certificate, derivation, grading, ideal, modification
from .config import get_config
from .dsl import (
    Command,
    DerivationDecl,
    FamilyDecl,
    IdealDecl,
    ListValue,
    ModifyDecl,
    RecordValue,
    RingDecl,
    WeightsDecl,
    format_statement,
)
from .errors import AffineModError, ParseError, PreconditionError
from .poly import Polynomial, Ring, WeightFunction
from .syntax import Num, Var, evaluate, expr_to_source

SCHEMA = 1


@dataclasses.dataclass
class Report:
    command: str
    result: dict
    seconds: float = 0.0

    def to_json(self, timing=False):
        out = {"command": self.command, "result": self.result}
        if timing:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclasses.dataclass(frozen=True)
class IdealValue:
    algebra: object
    ideal: object


@dataclasses.dataclass(frozen=True)
class LocusValue:
    locus: object
    power: object


class Session:
    def __init__(self):
        self.env = {}
        self.current = None
        self._families = {}

    # -- helpers --------------------------------------------------------------

    def lookup(self, name, kinds=None, what="object"):
        if name not in self.env:
            raise ParseError(f"undefined name {name!r}")
        value = self.env[name]
        if kinds and not isinstance(value, kinds):
            raise PreconditionError(f"{name!r} is not a {what}")
        return value

    def algebra(self, name=None):
        if name is None:
            if self.current is None:
                raise ParseError("no ring declared yet")
            return self.current
        value = self.lookup(name)
        if isinstance(value, ideal.PresentedAlgebra):
            return value
        if isinstance(value, modification.BasicStep):
            return value.next.algebra
        if isinstance(getattr(value, "algebra", None), ideal.PresentedAlgebra):
            return value.algebra
        raise PreconditionError(f"{name!r} is not an algebra")

    def poly(self, expr, ring):
        env = {n: ring.gen(n) for n in ring.names}
        return ring.coerce(evaluate(expr, env))

    def name_of(self, expr, what="name"):
        if not isinstance(expr, Var):
            raise ParseError(f"expected a {what}, got {expr_to_source(expr)}")
        return expr.name

    def family(self, params):
        if params not in self._families:
            self._families[params] = certificate.build_family(params)
        return self._families[params]

    # -- declarations ---------------------------------------------------------

    def declare(self, stmt):
        if isinstance(stmt, RingDecl):
            ring = Ring(stmt.variables)
            rels = [self.poly(e, ring) for e in stmt.relations]
            alg = ideal.PresentedAlgebra(ring, rels)
            self.env[stmt.name] = alg
            self.current = alg
            return {"ring": repr(ring), "relations": [str(r) for r in alg.relations]}
        if isinstance(stmt, IdealDecl):
            alg = self.algebra(stmt.ring)
            gens = [self.poly(e, alg.ring) for e in stmt.gens]
            self.env[stmt.name] = IdealValue(alg, ideal.Ideal(alg.ring, gens))
            return {"ideal": [str(g) for g in gens]}
        if isinstance(stmt, WeightsDecl):
            w = WeightFunction(dict(stmt.entries))
            self.env[stmt.name] = w
            return {"weights": {k: list(v) for k, v in w.weights.items()}}
        if isinstance(stmt, DerivationDecl):
            alg = self.algebra(stmt.ring)
            images = {v: self.poly(e, alg.ring) for v, e in stmt.images}
            D = derivation.Derivation(alg, images)
            self.env[stmt.name] = D
            return {"derivation": D.to_json(), "well_defined": True}
        if isinstance(stmt, ModifyDecl):
            iv = self.lookup(stmt.ideal, IdealValue, "ideal")
            ring = iv.algebra.ring
            f = self.poly(stmt.f, ring)
            seq = [self.poly(e, ring) for e in stmt.seq] if stmt.seq is not None else None
            loc = modification.ModificationLocus.make(iv.algebra, iv.ideal, f, seq)
            power = None
            if stmt.power is not None:
                power = (self.poly(stmt.power[0], ring), stmt.power[1])
            self.env[stmt.name] = LocusValue(loc, power)
            return {"locus": loc.to_json()}
        if isinstance(stmt, FamilyDecl):
            params = self.family_params(stmt.items)
            self.env[stmt.name] = params
            return {"family": params.to_json()}
        raise TypeError(stmt)

    def family_params(self, items):
        fields = dict(items)
        unknown = set(fields) - {"k", "l", "n", "q", "blocks"}
        if unknown:
            raise ParseError(f"unknown family fields: {sorted(unknown)}")
        for key in ("k", "l", "n"):
            if key not in fields:
                raise ParseError(f"family is missing field {key!r}")
        k = _int(fields["k"])
        l = _int(fields["l"])
        n = tuple(_int(v) for v in _list(fields["n"]))
        q = tuple(_text(v) for v in _list(fields.get("q", ListValue(()))))
        blocks = []
        for rec in _list(fields.get("blocks", ListValue(()))):
            if not isinstance(rec, RecordValue):
                raise ParseError("blocks must be records {c=... n=[...] r=[...]}")
            b = dict(rec.items)
            c = evaluate(b["c"], {})
            blocks.append(
                certificate.Block(
                    Fraction(c),
                    tuple(_int(v) for v in _list(b.get("n", ListValue(())))),
                    tuple(_text(v) for v in _list(b.get("r", ListValue(())))),
                )
            )
        return certificate.FamilyParams(k, l, n, q, tuple(blocks))

    # -- commands -------------------------------------------------------------

    def execute(self, stmt):
        if not isinstance(stmt, Command):
            return self.declare(stmt), None
        handler = getattr(self, f"cmd_{stmt.name}", None)
        if handler is None:
            raise ParseError(f"unknown command {stmt.name!r}", stmt.span.line, stmt.span.column)
        result, value = handler(*stmt.args)
        if stmt.target:
            if value is None:
                raise PreconditionError(f"command {stmt.name!r} produces nothing to bind")
            self.env[stmt.target] = value
            if isinstance(value, ideal.PresentedAlgebra):
                self.current = value
            elif isinstance(value, modification.BasicStep):
                self.current = value.next.algebra
        return result, value

    def _locus(self, arg):
        name = self.name_of(arg, "locus")
        value = self.lookup(name)
        if isinstance(value, modification.BasicStep) and value.transferred is not None:
            return LocusValue(value.transferred, None)
        if not isinstance(value, LocusValue):
            raise PreconditionError(f"{name!r} is not a modification locus")
        return value

    def cmd_davis(self, m):
        lv = self._locus(m)
        pres = modification.davis_presentation(lv.locus)
        return pres.to_json(), pres.algebra

    def cmd_ideals(self, m):
        lv = self._locus(m)
        pres = modification.davis_presentation(lv.locus)
        ideals = modification.modification_ideals(lv.locus, pres, lv.power)
        return ideals.to_json(), None

    def cmd_largest(self, m, cap=None):
        lv = self._locus(m)
        res = modification.largest_ideal(lv.locus, _int(cap) if cap is not None else None)
        return res.to_json(), None

    def cmd_split(self, m, f1, f2):
        lv = self._locus(m)
        ring = lv.locus.ring
        res = modification.compose_split(lv.locus, self.poly(f1, ring), self.poly(f2, ring))
        return res.to_json(), res.second.algebra

    def cmd_fiber(self, *ms):
        if len(ms) == 1 and isinstance(ms[0], ListValue):
            ms = ms[0].items
        locs = [self._locus(m).locus for m in ms]
        fp = modification.fiber_product_presentation(locs)
        return fp.to_json(), fp.algebra

    def cmd_basicstep(self, a, g, center, *rest):
        alg = self.algebra(self.name_of(a, "algebra"))
        ring = alg.ring
        names = outer = None
        for extra in rest:
            if isinstance(extra, ListValue):
                names = [self.name_of(v, "variable name") for v in extra.items]
            else:
                outer = self._locus(extra).locus
        gens = [self.poly(e, ring) for e in _list(center)]
        step = modification.basic_step(alg, self.poly(g, ring), gens, outer=outer, names=names)
        return step.to_json(), step

    def _weights(self, arg):
        return self.lookup(self.name_of(arg, "weights"), WeightFunction, "weight function")

    def cmd_graded(self, a, w=None):
        value = self.lookup(self.name_of(a))
        if isinstance(value, certificate.FamilyParams):
            fam = self.family(value)
            return {**fam.xhat.to_json(), "prime_certified": fam.prime_certified}, fam.xhat
        alg = self.algebra(self.name_of(a))
        gp = grading.graded_ideal(alg, self._weights(w))
        return gp.to_json(), gp

    def _graded(self, arg):
        value = self.lookup(self.name_of(arg, "graded presentation"))
        if isinstance(value, certificate.FamilyParams):
            return self.family(value).xhat
        if not isinstance(value, grading.GradedPresentation):
            raise PreconditionError(f"{arg.name!r} is not a graded presentation")
        return value

    def cmd_gr(self, g, a):
        gp = self._graded(g)
        p = self.poly(a, gp.ring)
        q = grading.minimal_representative(p, gp)
        return {
            "element": str(p),
            "representative": str(q),
            "gr": str(grading.principal_component(q, gp.weights)),
            "degree": list(grading.weight_degree(q, gp.weights)),
        }, None

    def cmd_convention(self, f, e=None):
        params = self.lookup(self.name_of(f, "family"), certificate.FamilyParams, "family")
        fam = certificate.build_family(params, e=_int(e) if e is not None else None)
        return fam.weights.report(), fam.weights

    def _derivation(self, arg):
        return self.lookup(self.name_of(arg, "derivation"), derivation.Derivation, "derivation")

    def cmd_lndcheck(self, d, bound=None):
        D = self._derivation(d)
        v = derivation.lnd_check(D, _int(bound) if bound is not None else None)
        return v.to_json(), None

    def cmd_degree(self, d, a):
        D = self._derivation(d)
        return derivation.degree(D, self.poly(a, D.ring)).to_json(), None

    def cmd_exp(self, d, a):
        D = self._derivation(d)
        p = self.poly(a, D.ring)
        return {"element": str(p), "image": str(derivation.exp_action(D, p))}, None

    def cmd_kernel(self, d, a):
        D = self._derivation(d)
        p = self.poly(a, D.ring)
        return {"element": str(p), "in_kernel": derivation.kernel_member(D, p)}, None

    def cmd_derive(self, d, a):
        D = self._derivation(d)
        p = self.poly(a, D.ring)
        return {"element": str(p), "image": str(derivation.derive(D, p))}, None

    def _family(self, arg):
        params = self.lookup(self.name_of(arg, "family"), certificate.FamilyParams, "family")
        return self.family(params)

    def cmd_jacobian(self, f, a1, a2):
        fam = self._family(f)
        p1, p2 = self.poly(a1, fam.ring), self.poly(a2, fam.ring)
        D = certificate.pair_derivation(fam, p1, p2)
        verdict = derivation.lnd_check(D)
        return {"pair": [str(p1), str(p2)], "derivation": D.to_json(), "lnd_check": verdict.to_json()}, D

    def cmd_case(self, f, a1, a2):
        fam = self._family(f)
        cands = grading.homogeneous_irreducible_candidates(
            fam.xhat, fam.params.k, fam.params.l, fam.params.m
        )
        by_label = {c.label: c for c in cands}
        by_label["binomial"] = cands[-1]
        picked = []
        for a in (a1, a2):
            key = a.name if isinstance(a, Var) else expr_to_source(a)
            if key not in by_label:
                raise PreconditionError(f"{key!r} is not a candidate element")
            picked.append(by_label[key])
        return certificate.case_analysis(fam, tuple(picked)).to_json(), None

    def cmd_mlcert(self, f, e=None):
        params = self.lookup(self.name_of(f, "family"), certificate.FamilyParams, "family")
        report = certificate.ml_report(params, e=_int(e) if e is not None else None)
        return report.to_json(), None

    def _ideal(self, arg):
        return self.lookup(self.name_of(arg, "ideal"), IdealValue, "ideal")

    def cmd_groebner(self, i, order=None):
        iv = self._ideal(i)
        full = iv.algebra.ideal_of(iv.ideal.gens)
        kind = self.name_of(order, "order") if order is not None else "degrevlex"
        if kind == "lex":
            mo = ideal.MonomialOrder.lex(full.ring)
        elif kind == "degrevlex":
            mo = ideal.MonomialOrder.degrevlex(full.ring)
        else:
            raise PreconditionError(f"unknown order {kind!r}")
        return {"order": kind, "basis": [str(g) for g in full.groebner(mo)]}, None

    def cmd_dim(self, i):
        value = self.lookup(self.name_of(i))
        if isinstance(value, IdealValue):
            return {"dimension": ideal.dimension(value.algebra.ideal_of(value.ideal.gens))}, None
        return {"dimension": self.algebra(i.name).dimension()}, None

    def cmd_member(self, a, i):
        iv = self._ideal(i)
        p = self.poly(a, iv.algebra.ring)
        return {"element": str(p), "member": ideal.membership(p, iv.algebra.ideal_of(iv.ideal.gens))}, None

    def _sequence_test(self, a, bs, fn, key):
        alg = self.algebra(self.name_of(a, "algebra"))
        seq = [self.poly(e, alg.ring) for e in _list(bs)]
        return {"sequence": [str(b) for b in seq], key: fn(seq, alg)}, None

    def cmd_semiregular(self, a, bs):
        return self._sequence_test(a, bs, ideal.is_semiregular_sequence, "semiregular")

    def cmd_regular(self, a, bs):
        return self._sequence_test(a, bs, ideal.is_regular_sequence, "regular")

    def cmd_gradient(self, a, bs):
        return self._sequence_test(a, bs, ideal.gradient_generic_independence, "independent")

    def cmd_representative(self, i, bs):
        iv = self._ideal(i)
        seq = [self.poly(e, iv.algebra.ring) for e in _list(bs)]
        ok = ideal.is_representative_system(seq, iv.ideal, iv.algebra)
        return {"sequence": [str(b) for b in seq], "representative": ok}, None

    def cmd_subsequences(self, i, first, size):
        """Semi-regularity of every ``size``-subsequence of the ideal's generators starting with ``first``."""
        iv = self._ideal(i)
        ring = iv.algebra.ring
        head = self.poly(first, ring)
        rest = [g for g in iv.ideal.gens if g != head]
        import itertools

        rows = []
        for combo in itertools.combinations(rest, _int(size) - 1):
            seq = [head, *combo]
            rows.append(
                {
                    "sequence": [str(b) for b in seq],
                    "semiregular": ideal.is_semiregular_sequence(seq, iv.algebra),
                    "representative": ideal.is_representative_system(seq, iv.ideal, iv.algebra),
                }
            )
        return {"subsequences": rows}, None

    def cmd_simplify(self, a):
        alg = self.algebra(self.name_of(a, "algebra"))
        small, subst = alg.simplify()
        return {
            "ring": repr(small.ring),
            "relations": [str(r) for r in small.relations],
            "substitution": {k: str(v) for k, v in sorted(subst.items())},
        }, small

    def cmd_eliminate(self, i, names):
        iv = self._ideal(i)
        drop = [self.name_of(v, "variable") for v in _list(names)]
        el = ideal.eliminate(iv.algebra.ideal_of(iv.ideal.gens), drop)
        return {"ring": repr(el.ring), "ideal": [str(g) for g in el.groebner()]}, None

    def cmd_extend(self, i, f, length, seed=None):
        iv = self._ideal(i)
        seq = ideal.generic_semiregular_extension(
            iv.ideal,
            self.poly(f, iv.algebra.ring),
            _int(length),
            seed=_int(seed) if seed is not None else None,
            ambient=iv.algebra,
        )
        return {"sequence": [str(b) for b in seq]}, None

    def cmd_corpus(self, name=None):
        from . import corpus

        if name is None:
            return {"entries": corpus.names()}, None
        entry = corpus.resolve(self.name_of(name, "corpus entry"))
        return {"entry": entry, "matches_golden": corpus.check(entry)}, None


def _int(v):
    if isinstance(v, Num) and v.value.denominator == 1:
        return int(v.value)
    if isinstance(v, int):
        return v
    raise ParseError(f"expected an integer, got {_describe(v)}")


def _list(v):
    if not isinstance(v, ListValue):
        raise ParseError(f"expected a list [...], got {_describe(v)}")
    return v.items


def _text(v):
    if isinstance(v, (ListValue, RecordValue)):
        raise ParseError("expected a polynomial")
    return expr_to_source(v)


def _describe(v):
    if isinstance(v, (ListValue, RecordValue)):
        return type(v).__name__
    return expr_to_source(v)


def run(script, timing=False):
    """Run every statement; returns ``(reports, error)`` where ``error`` is an exception or None."""
    session = Session()
    reports = []
    for stmt in script.statements:
        echo = format_statement(stmt)
        start = time.perf_counter()
        try:
            result, _ = session.execute(stmt)
        except AffineModError as exc:
            return reports, (echo, exc)
        reports.append(Report(echo, result, time.perf_counter() - start))
    return reports, None


def render_text(reports, error=None, timing=False):
    lines = []
    for r in reports:
        lines.append(f"> {r.command}")
        lines.extend(_render(r.result, 1))
        if timing:
            lines.append(f"  ({r.seconds:.3f}s)")
    if error is not None:
        echo, exc = error
        lines.append(f"> {echo}")
        lines.append(f"  error ({type(exc).__name__}): {exc}")
    return "\n".join(lines) + "\n"


def _render(value, depth):
    pad = "  " * depth
    out = []
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                out.append(f"{pad}{k}:")
                out.extend(_render(v, depth + 1))
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                out.append(f"{pad}-")
                out.extend(_render(v, depth + 1))
            else:
                out.append(f"{pad}- {_scalar(v)}")
    else:
        out.append(f"{pad}{_scalar(value)}")
    return out


def _flat(v):
    if not isinstance(v, list) or any(isinstance(x, (dict, list)) for x in v):
        return False
    return len(_scalar(v)) <= 72


def _scalar(v):
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "yes" if v else "no"
    return str(v)


def to_document(reports, error=None, timing=False):
    doc = {"schema": SCHEMA, "reports": [r.to_json(timing) for r in reports]}
    if error is not None:
        echo, exc = error
        doc["error"] = {
            "command": echo,
            "class": type(exc).__name__,
            "exit_code": exc.exit_code,
            "message": str(exc),
        }
    return doc


def exit_code(error):
    return 0 if error is None else error[1].exit_code


__all__ = ["Report", "Session", "run", "render_text", "to_document", "exit_code", "Polynomial"]
