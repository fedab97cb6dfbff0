"""Orchestration: run the whole invariant computation on a fixture document
and render the result as a text or JSON-lines report.

Reports are kept as JSON-ready payload dictionaries so that the machine
format round-trips exactly: ``Report.from_json_lines(r.to_json_lines())``
reconstructs an equal report.
"""

from __future__ import annotations

import json
from typing import Iterable

from .braid import gamma_dot, hat_gamma
from .curve import CurveCombinatorics
from .errors import InternalInvariantError
from .fixture import FixtureDocument
from .invariant import (
    QuotientContext,
    epsilon_signature,
    has_epsilon_shape,
    indeterminacy_subgroup,
    linking_set,
    natural_isomorphism_candidates,
    zariski_test,
)

ZERO_MEMBER_NOTE = (
    "the zero class is a member: some nonzero coefficient tuples land on it, "
    "so listings restricted to nonzero-tuple images are one element short"
)


def format_combination(coefficients, names) -> str:
    """Render an integer combination of meridians, e.g. ``x_L1 - x_L2``."""
    terms = []
    for c, name in zip(coefficients, names):
        if not c:
            continue
        symbol = f"x_{name}"
        if c == 1:
            terms.append(("+", symbol))
        elif c == -1:
            terms.append(("-", symbol))
        elif c > 0:
            terms.append(("+", f"{c}*{symbol}"))
        else:
            terms.append(("-", f"{-c}*{symbol}"))
    if not terms:
        return "0"
    sign, body = terms[0]
    out = body if sign == "+" else f"-{body}"
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def _balanced_reducer(quotient):
    """Coordinate-wise balanced reduction mod the exponent, when every
    generator has that exponent in the quotient; identity otherwise."""
    e = quotient.exponent()
    if not quotient.is_finite() or e < 2:
        return lambda coeffs: list(coeffs)
    n = quotient.rank_generators
    lattice_rows = [list(r) for r in quotient.relations.entries]
    from .abelian import RowLattice
    lattice = RowLattice(lattice_rows, n)
    for i in range(n):
        unit = [0] * n
        unit[i] = e
        if not lattice.contains(unit):
            return lambda coeffs: list(coeffs)
    half = e // 2

    def reduce(coeffs):
        out = []
        for c in coeffs:
            r = c % e
            out.append(r - e if r > half else r)
        return out

    return reduce


def _element_order(element, exponent):
    for t in range(1, exponent + 1):
        if (t * element).is_zero():
            return t
    raise InternalInvariantError("element order exceeds the group exponent")


class Report:
    """A finished computation, as a JSON-ready payload dictionary."""

    def __init__(self, payload: dict):
        self.payload = payload

    def __eq__(self, other):
        return isinstance(other, Report) and self.payload == other.payload

    def __repr__(self):
        return f"Report({self.payload.get('type')!r})"

    # -- machine format ----------------------------------------------------

    _LIST_FIELDS = {
        "invariant": ("indeterminacy", "ghat", "members", "notes"),
        "compare": ("outcomes", "notes"),
    }

    def to_json_lines(self) -> str:
        payload = dict(self.payload)
        kind = payload["type"]
        lines = []
        lists = {}
        for field in self._LIST_FIELDS[kind]:
            lists[field] = payload.pop(field, [])
        header = {"record": "report", **payload}
        lines.append(json.dumps(header, sort_keys=True))
        for field, entries in lists.items():
            for entry in entries:
                record = {"record": field}
                if isinstance(entry, dict):
                    record.update(entry)
                else:
                    record["value"] = entry
                lines.append(json.dumps(record, sort_keys=True))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_json_lines(cls, text: str) -> "Report":
        payload = None
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            record = json.loads(line)
            record_kind = record.pop("record")
            if record_kind == "report":
                payload = record
                for field in cls._LIST_FIELDS[record["type"]]:
                    payload[field] = []
            elif payload is None:
                raise ValueError("report lines before the report header")
            else:
                if set(record) == {"value"}:
                    payload[record_kind].append(record["value"])
                else:
                    payload[record_kind].append(record)
        if payload is None:
            raise ValueError("empty report")
        return cls(payload)

    # -- human format --------------------------------------------------

    def to_text(self) -> str:
        if self.payload["type"] == "invariant":
            return self._invariant_text()
        return self._compare_text()

    def _invariant_text(self) -> str:
        p = self.payload
        lines = []
        title = f"cycle {p['cycle']} in {p['fixture']}"
        if p["deletions"]:
            title += " minus {" + ", ".join(p["deletions"]) + "}"
        lines.append(title)
        lines.append("=" * len(title))
        lines.append(f"support: {', '.join(p['support'])}")
        lines.append(f"complement: {', '.join(p['complement'])}")
        lines.append(f"H1 of complement exterior: {p['h1_decomposition']}")
        lines.append("indeterminacy subgroup generators:")
        if p["indeterminacy"]:
            for g in p["indeterminacy"]:
                lines.append(
                    f"  {g['display']}   (component {g['support_component']},"
                    f" point {g['point']})"
                )
        else:
            lines.append("  (none)")
        lines.append(
            f"quotient: {p['quotient_decomposition']}"
            f"  [diagonal {tuple(p['quotient_diagonal'])}]"
        )
        lines.append("cycle classes through the meridian map:")
        for g in p["ghat"]:
            lines.append(f"  {g['cycle']}^ = {g['display']}")
        lines.append(f"linking set ({p['case']} case):")
        if p["lks_finite"]:
            for m in p["members"]:
                eps = ""
                if m.get("epsilon") is not None:
                    eps = f"   eps = {tuple(m['epsilon'])}"
                lines.append(f"  [{m['display']}]{eps}")
            lines.append(f"  ({len(p['members'])} classes)")
        else:
            lines.append(f"  offset [{p['lks_offset']}] plus the subgroup")
            lines.append("  generated by:")
            for g in p["lks_subgroup"]:
                lines.append(f"    [{g}]")
            if p["zero_excluded"]:
                lines.append("  with the zero class excluded")
        for note in p["notes"]:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"

    def _compare_text(self) -> str:
        p = self.payload
        lines = []
        title = f"compare {p['left_label']} vs {p['right_label']}"
        lines.append(title)
        lines.append("=" * len(title))
        lines.append(f"left quotient:  {p['left_quotient']}")
        lines.append(f"right quotient: {p['right_quotient']}")
        lines.append(
            f"relabelings tested: {p['relabelings']}"
            + (" (oriented comparison only)" if p["oriented_only"] else
               (" (conjugate set also tested)" if p["conjugate_tested"] else ""))
        )
        lines.append(f"verdict: {p['verdict']}")
        if p["witness"] is not None:
            pairs = ", ".join(f"{a}->{b}" for a, b in sorted(p["witness"].items()))
            lines.append(f"witness relabeling: {pairs}")
        else:
            lines.append(
                f"exhaustion: {p['failures']}/{p['relabelings']} relabelings fail"
            )
            for o in p["outcomes"]:
                pairs = ", ".join(f"{a}->{b}" for a, b in sorted(o["mapping"].items()))
                flags = f"oriented != " if not o["oriented_equal"] else "oriented =="
                if o["conjugate_equal"] is not None:
                    flags += ", conjugate " + ("==" if o["conjugate_equal"] else "!=")
                lines.append(f"  {pairs}: {flags}")
        if p["epsilon_applicable"]:
            lines.append("residue-count signatures over the linking sets:")
            lines.append(f"  left:  {_eps_table_text(p['left_epsilon'])}")
            lines.append(f"  right: {_eps_table_text(p['right_epsilon'])}")
            if p["epsilon_left_only"]:
                only = ", ".join(str(tuple(t)) for t in p["epsilon_left_only"])
                lines.append(
                    f"  left-only signatures {only}: no relabeling can match"
                )
            else:
                lines.append("  every left signature also occurs on the right")
        for note in p["notes"]:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def _eps_table_text(table):
    return ", ".join(f"{tuple(entry['counts'])} x{entry['multiplicity']}"
                     for entry in table)


class PipelineResult:
    """Report plus the live objects, for callers that keep computing."""

    __slots__ = ("report", "context", "linking", "ghat_elements", "basis_images")

    def __init__(self, report, context, linking, ghat_elements, basis_images):
        self.report = report
        self.context = context
        self.linking = linking
        self.ghat_elements = ghat_elements
        self.basis_images = basis_images


def _realization_vector(ctx: QuotientContext, realization, cycle_name: str):
    """Raw meridian coefficient vector of one realized cycle class."""
    n = len(ctx.complement)
    index = {name: k for k, name in enumerate(ctx.complement)}
    raw = [0] * n
    if realization.is_braid:
        labeling = realization.labeling
        for comp_name, lk in gamma_dot(realization.braid, labeling).items():
            label = labeling.label(comp_name)
            if label in ctx.support:
                raise ValueError(
                    f"braid strand {comp_name} is labeled with support "
                    f"component {label}; mark it dropped instead"
                )
            raw[index[label]] += lk
        element = ctx.h1_complement.element(raw)
        check = hat_gamma(realization.braid, labeling, ctx.h1_complement,
                          ctx.meridians())
        if element != check:
            raise InternalInvariantError(
                f"meridian-map routes disagree for {cycle_name}"
            )
    else:
        for name, value in realization.coefficients.items():
            if name not in index:
                raise ValueError(
                    f"class coefficients of {cycle_name} reference {name!r}, "
                    "which is not a complement component"
                )
            raw[index[name]] += value
        element = ctx.h1_complement.element(raw)
    return raw, element


def run_pipeline(doc: FixtureDocument, cycle_name: str,
                 deletions: Iterable[str] = (),
                 fixture_label: str = "fixture") -> PipelineResult:
    """Full computation for one cycle: quotient, cycle classes, linking set.

    ``deletions`` restricts the fixture to a subcurve first; braid strands
    labeled with deleted components are dropped from the meridian map.
    """
    deletions = tuple(sorted(deletions))
    if deletions:
        doc = doc.delete_components(deletions)
    if cycle_name not in doc.cycles:
        raise ValueError(f"fixture has no cycle named {cycle_name!r}")
    cycle = doc.cycles[cycle_name]
    curve = doc.curve
    ctx = indeterminacy_subgroup(curve, cycle)

    ghat_entries = []
    ghat_elements = {}
    basis_images = []
    for basis_id in cycle.basis_ids():
        raw, element = _realization_vector(ctx, cycle.realizations[basis_id],
                                           basis_id)
        ghat_entries.append({
            "cycle": basis_id,
            "coefficients": list(raw),
            "display": format_combination(raw, ctx.complement),
        })
        ghat_elements[basis_id] = element
        basis_images.append(ctx.to_quotient(element))

    gamma_hat = None
    if cycle_name in cycle.realizations:
        raw, element = _realization_vector(ctx, cycle.realizations[cycle_name],
                                           cycle_name)
        ghat_entries.append({
            "cycle": cycle_name,
            "coefficients": list(raw),
            "display": format_combination(raw, ctx.complement),
        })
        ghat_elements[cycle_name] = element
        gamma_hat = element

    lks = linking_set(ctx, gamma_hat, basis_images)
    case = "single-component" if len(ctx.support) == 1 else "coset"

    notes = []
    payload = {
        "type": "invariant",
        "fixture": fixture_label,
        "cycle": cycle_name,
        "deletions": list(deletions),
        "support": list(ctx.support),
        "complement": list(ctx.complement),
        "h1_decomposition": ctx.h1_complement.decomposition(),
        "h1_diagonal": list(ctx.h1_complement.snf_diagonal),
        "indeterminacy": [
            {
                "support_component": d,
                "point": point,
                "coefficients": list(coeffs),
                "display": format_combination(coeffs, ctx.complement),
            }
            for d, point, coeffs in ctx.indeterminacy_generators
        ],
        "quotient_decomposition": ctx.quotient.decomposition(),
        "quotient_diagonal": list(ctx.quotient.snf_diagonal),
        "quotient_order": ctx.quotient.order(),
        "ghat": ghat_entries,
        "case": case,
        "zero_excluded": lks.zero_excluded,
        "epsilon_applicable": has_epsilon_shape(ctx.quotient),
        "lks_finite": ctx.quotient.is_finite(),
    }

    if ctx.quotient.is_finite():
        payload["members"] = _enumerate_members(ctx, lks, basis_images, gamma_hat)
        if case == "single-component" and not lks.zero_excluded:
            notes.append(ZERO_MEMBER_NOTE)
    else:
        payload["members"] = []
        payload["lks_offset"] = format_combination(lks.offset.coefficients,
                                                   ctx.complement)
        payload["lks_subgroup"] = [
            format_combination(g.coefficients, ctx.complement)
            for g in lks.subgroup.generators
        ]
    payload["notes"] = notes
    return PipelineResult(Report(payload), ctx, lks, ghat_elements, basis_images)


def _enumerate_members(ctx, lks, basis_images, gamma_hat):
    """Members of a finite linking set with display representatives derived
    from their coefficient-tuple provenance (offset + sum a_i * image_i),
    balanced-reduced when the quotient shape allows it."""
    reduce = _balanced_reducer(ctx.quotient)
    exponent = ctx.quotient.exponent()
    offset = lks.offset
    orders = [_element_order(img, exponent) for img in basis_images]

    display = {}

    def visit(i, current):
        if i == len(basis_images):
            element = current.canonicalize()
            key = element.canonical_form
            if key not in display:
                display[key] = list(current.coefficients)
            return
        for a in range(orders[i]):
            visit(i + 1, current + a * basis_images[i])

    visit(0, offset)

    members = []
    for element in lks.enumerate():
        raw = display.get(element.canonical_form)
        if raw is None:
            raw = list(element.coefficients)
        raw = reduce(raw)
        entry = {
            "display": format_combination(raw, ctx.complement),
            "coefficients": raw,
        }
        if has_epsilon_shape(ctx.quotient):
            eps = epsilon_signature(ctx.quotient, ctx.quotient.element(raw))
            entry["epsilon"] = list(eps.counts)
        else:
            entry["epsilon"] = None
        members.append(entry)
    return members


def _structural_diff(curve_a: CurveCombinatorics, curve_b: CurveCombinatorics) -> str:
    def component_census(curve):
        census = {}
        for c in curve.components:
            census[(c.degree, c.genus)] = census.get((c.degree, c.genus), 0) + 1
        return census

    def point_census(curve):
        census = {}
        for p in curve.singular_points:
            types = tuple(sorted(
                (curve.component(c).degree, curve.component(c).genus)
                for c in p.components))
            lk = tuple(sorted(p.local_lk.values()))
            key = (types, lk)
            census[key] = census.get(key, 0) + 1
        return census

    parts = []
    ca, cb = component_census(curve_a), component_census(curve_b)
    if ca != cb:
        parts.append(f"components by (degree, genus): {ca} vs {cb}")
    pa, pb = point_census(curve_a), point_census(curve_b)
    if pa != pb:
        parts.append("singular points by incidence type differ")
    if not parts:
        parts.append("combinatorics agree componentwise but no relabeling "
                      "matches the cycles")
    return "; ".join(parts)


def compare(doc_a: FixtureDocument, doc_b: FixtureDocument,
            cycle_a: str, cycle_b: str | None = None,
            deletions_a: Iterable[str] = (), deletions_b: Iterable[str] = (),
            oriented_only: bool = False,
            label_a: str = "left", label_b: str = "right") -> Report:
    """Run both pipelines and the distinguishing test over every
    combinatorics-preserving relabeling."""
    cycle_b = cycle_b or cycle_a
    left = run_pipeline(doc_a, cycle_a, deletions_a, label_a)
    right = run_pipeline(doc_b, cycle_b, deletions_b, label_b)
    ctx_a, ctx_b = left.context, right.context

    isos = natural_isomorphism_candidates(ctx_a.curve, ctx_a.cycle,
                                          ctx_b.curve, ctx_b.cycle)
    if not isos:
        raise ValueError(
            "combinatorics mismatch: " + _structural_diff(ctx_a.curve, ctx_b.curve)
        )
    verdict = zariski_test((ctx_a, left.linking), (ctx_b, right.linking),
                           isos, oriented_only)

    eps_applicable = (has_epsilon_shape(ctx_a.quotient)
                      and has_epsilon_shape(ctx_b.quotient)
                      and ctx_a.quotient.is_finite()
                      and ctx_b.quotient.is_finite())
    left_eps = right_eps = None
    eps_left_only = None
    if eps_applicable:
        left_eps = _epsilon_census(left)
        right_eps = _epsilon_census(right)
        left_set = {tuple(e["canonical"]) for e in left_eps}
        right_set = {tuple(e["canonical"]) for e in right_eps}
        # Relabelings permute meridians, which preserves residue counts; a
        # signature on one side with no match on the other already rules out
        # every relabeling.
        eps_left_only = sorted(left_set - right_set)
        eps_left_only = [list(t) for t in eps_left_only]

    failures = sum(1 for o in verdict.outcomes if not o.matches)
    payload = {
        "type": "compare",
        "left_label": _titled(label_a, deletions_a),
        "right_label": _titled(label_b, deletions_b),
        "left_quotient": ctx_a.quotient.decomposition(),
        "right_quotient": ctx_b.quotient.decomposition(),
        "verdict": "DISTINGUISHED" if verdict.distinguished else "NOT_DISTINGUISHED",
        "relabelings": len(verdict.outcomes),
        "failures": failures,
        "oriented_only": oriented_only,
        "conjugate_tested": verdict.conjugate_tested,
        "witness": dict(verdict.witness.mapping) if verdict.witness else None,
        "outcomes": [
            {
                "mapping": dict(o.mapping),
                "oriented_equal": o.oriented_equal,
                "conjugate_equal": o.conjugate_equal,
            }
            for o in verdict.outcomes
        ],
        "epsilon_applicable": eps_applicable,
        "left_epsilon": left_eps,
        "right_epsilon": right_eps,
        "epsilon_left_only": eps_left_only,
        "notes": list(dict.fromkeys(left.report.payload["notes"]
                                    + right.report.payload["notes"])),
    }
    return Report(payload)


def _titled(label, deletions):
    deletions = sorted(deletions)
    if deletions:
        return f"{label} minus {{{', '.join(deletions)}}}"
    return label


def _epsilon_census(result: PipelineResult):
    census = {}
    order = []
    for member in result.report.payload["members"]:
        eps = epsilon_signature(result.context.quotient,
                                result.context.quotient.element(member["coefficients"]))
        key = eps.canonical()
        if key not in census:
            census[key] = {"counts": list(eps.counts),
                           "canonical": list(key), "multiplicity": 0}
            order.append(key)
        census[key]["multiplicity"] += 1
    return [census[k] for k in order]
