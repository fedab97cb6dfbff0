"""The structured text format for curve/cycle/braid fixtures.

A fixture document is line oriented; ``#`` starts a comment, blank lines are
skipped.  Five sections carry data, one carries free-form notes:

    [components]
    C  3 1                      # name, degree, genus
    L0 1 0

    [points]
    P0 : C L0 ; lk C L0 3       # incident components; local linking numbers

    [cycles]
    cycle gamma                 # a block; directives are indented
      projection C              # walk on the incidence graph (single vertex
                                # or closed alternating point/component walk)
      basis C : g1 g2           # 2*genus basis cycles per support component
      realize g1 braid S1       # braid route, or:
      realize g2 class L0=1     # directly supplied meridian coefficients

    [braids]
    braid S1 strands 8 word -1 2 4 3 -4 -4 3 4 5 5 1 1 2 -1

    [rho]
    rho S1 : s1=0 s2=L2 ...     # closure component -> curve component,
                                # 0 = the cycle itself, - = dropped

    [meta]
    free-form notes, preserved verbatim

Parsing is strict: unknown sections, unknown directives, bad literals and
duplicate names are syntax errors; unresolved names are dangling-reference
errors; braid-word/labeling mismatches are strand-count errors.  Every
diagnostic carries a line and column.
"""

from __future__ import annotations

import re

from .braid import BraidWord, CYCLE, DROPPED, StrandLabeling, closure_components
from .curve import (
    Component,
    CurveCombinatorics,
    CycleRealization,
    CycleSpec,
    SingularPoint,
    Walk,
)
from .errors import FixtureError

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_SECTIONS = ("components", "points", "cycles", "braids", "rho", "meta")


class _Token:
    __slots__ = ("text", "line", "column")

    def __init__(self, text, line, column):
        self.text = text
        self.line = line
        self.column = column


def _tokenize(line_text: str, line_no: int):
    tokens = []
    i = 0
    while i < len(line_text):
        if line_text[i] == "#":
            break
        if line_text[i].isspace():
            i += 1
            continue
        start = i
        while i < len(line_text) and not line_text[i].isspace() and line_text[i] != "#":
            i += 1
        tokens.append(_Token(line_text[start:i], line_no, start + 1))
    return tokens


def _syntax(msg, token=None, line=None, column=None):
    if token is not None:
        line, column = token.line, token.column
    return FixtureError("syntax", msg, line, column)


def _dangling(msg, token):
    return FixtureError("dangling-ref", msg, token.line, token.column)


def _strand(msg, line=None, column=None):
    return FixtureError("strand-count", msg, line, column)


def _check_name(token, kind):
    if not _NAME.match(token.text):
        raise _syntax(f"invalid {kind} name {token.text!r}", token)
    return token.text


def _int(token, kind="integer"):
    try:
        return int(token.text)
    except ValueError:
        raise _syntax(f"expected {kind}, got {token.text!r}", token) from None


class FixtureDocument:
    """A parsed fixture: curve, named cycles, braids with meridian maps."""

    __slots__ = ("curve", "cycles", "braids", "labelings", "metadata")

    def __init__(self, curve, cycles, braids, labelings, metadata=()):
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "cycles", dict(cycles))
        object.__setattr__(self, "braids", dict(braids))
        object.__setattr__(self, "labelings", dict(labelings))
        object.__setattr__(self, "metadata", tuple(metadata))

    def __setattr__(self, name, value):
        raise AttributeError("FixtureDocument is immutable")

    def delete_components(self, names) -> "FixtureDocument":
        """Restriction of the whole document to a subcurve.

        Deleted components must stay clear of every cycle's support; braid
        strands labeled with them become DROPPED, and directly supplied
        class coefficients lose those coordinates.
        """
        doomed = set(names)
        unknown = doomed - set(self.curve.component_names)
        if unknown:
            raise ValueError(f"cannot delete unknown components {sorted(unknown)}")
        for cycle in self.cycles.values():
            clash = doomed & set(cycle.internal_support)
            if clash:
                raise ValueError(
                    f"cannot delete support components {sorted(clash)} of "
                    f"cycle {cycle.name}"
                )
        new_curve = self.curve.delete_components(doomed)
        new_labelings = {name: labeling.with_dropped(doomed)
                         for name, labeling in self.labelings.items()}
        new_cycles = {}
        for cname, cycle in self.cycles.items():
            realizations = {}
            for key, realization in cycle.realizations.items():
                if realization.is_braid:
                    braid_name = _braid_name_of(self, realization)
                    realizations[key] = CycleRealization(
                        braid=realization.braid,
                        labeling=new_labelings[braid_name],
                    )
                else:
                    coeffs = {k: v for k, v in realization.coefficients.items()
                              if k not in doomed}
                    realizations[key] = CycleRealization(coefficients=coeffs)
            new_cycles[cname] = CycleSpec(
                cycle.name, cycle.projection, new_curve,
                cycle.genus_basis, realizations,
            )
        return FixtureDocument(new_curve, new_cycles, self.braids,
                               new_labelings, self.metadata)


def _braid_name_of(doc: FixtureDocument, realization: CycleRealization) -> str:
    for name, word in doc.braids.items():
        if word == realization.braid:
            return name
    raise KeyError("realization braid is not part of the document")


def parse_fixture(text: str) -> FixtureDocument:
    """Strict parse of a fixture document; raises FixtureError on any flaw."""
    section = None
    component_rows = []          # (token_name, degree, genus)
    point_rows = []              # (token_name, [comp tokens], [(a,b,v) tokens])
    braid_rows = {}              # name -> (token, strands, [letters], line)
    rho_rows = {}                # braid name -> (token, {sname: label token})
    cycle_blocks = {}            # name -> dict of directives
    current_cycle = None
    metadata = []
    saw_any = False

    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if not stripped.strip():
            continue
        saw_any = True
        if stripped.lstrip().startswith("["):
            header = stripped.strip()
            if not header.endswith("]"):
                raise _syntax("unterminated section header", line=line_no, column=1)
            name = header[1:-1].strip()
            if name not in _SECTIONS:
                raise _syntax(f"unknown section [{name}]", line=line_no, column=1)
            section = name
            current_cycle = None
            continue
        if section is None:
            raise _syntax("content before any section header",
                          line=line_no, column=1)
        if section == "meta":
            metadata.append(stripped.strip())
            continue
        tokens = _tokenize(raw, line_no)
        if not tokens:
            continue
        indented = raw[: raw.index(tokens[0].text)].strip() == "" and \
            raw.startswith((" ", "\t"))
        if section == "components":
            if len(tokens) != 3:
                raise _syntax("component line needs: name degree genus", tokens[0])
            name = _check_name(tokens[0], "component")
            if any(name == t[0].text for t in component_rows):
                raise _syntax(f"duplicate component {name!r}", tokens[0])
            component_rows.append((tokens[0], _int(tokens[1], "degree"),
                                   _int(tokens[2], "genus")))
        elif section == "points":
            point_rows.append(_parse_point_line(tokens))
        elif section == "braids":
            name_token, strands, letters = _parse_braid_line(tokens)
            if name_token.text in braid_rows:
                raise _syntax(f"duplicate braid {name_token.text!r}", name_token)
            braid_rows[name_token.text] = (name_token, strands, letters)
        elif section == "rho":
            name_token, table = _parse_rho_line(tokens)
            if name_token.text in rho_rows:
                raise _syntax(f"duplicate rho table for {name_token.text!r}",
                              name_token)
            rho_rows[name_token.text] = (name_token, table)
        elif section == "cycles":
            if not indented:
                if tokens[0].text != "cycle" or len(tokens) != 2:
                    raise _syntax("expected: cycle <name>", tokens[0])
                cname = _check_name(tokens[1], "cycle")
                if cname in cycle_blocks:
                    raise _syntax(f"duplicate cycle {cname!r}", tokens[1])
                cycle_blocks[cname] = {
                    "token": tokens[1], "projection": None, "support": None,
                    "basis": [], "realize": [],
                }
                current_cycle = cname
            else:
                if current_cycle is None:
                    raise _syntax("cycle directive outside a cycle block", tokens[0])
                _parse_cycle_directive(tokens, cycle_blocks[current_cycle])

    if not saw_any:
        raise _syntax("empty document", line=1, column=1)
    if not component_rows:
        raise _syntax("a fixture needs a [components] section", line=1, column=1)

    return _resolve(component_rows, point_rows, braid_rows, rho_rows,
                    cycle_blocks, metadata)


def _parse_point_line(tokens):
    name_token = tokens[0]
    _check_name(name_token, "point")
    if len(tokens) < 3 or tokens[1].text != ":":
        raise _syntax("point line needs: name : components [; lk A B v ...]",
                      name_token)
    groups = [[]]
    for token in tokens[2:]:
        if token.text == ";":
            groups.append([])
        else:
            groups[-1].append(token)
    comp_tokens = groups[0]
    if not comp_tokens:
        raise _syntax("point has no incident components", name_token)
    lk_tokens = []
    for group in groups[1:]:
        if not group:
            continue
        if group[0].text != "lk" or len(group) != 4:
            raise _syntax("expected: lk <componentA> <componentB> <value>",
                          group[0])
        lk_tokens.append((group[1], group[2], group[3]))
    return name_token, comp_tokens, lk_tokens


def _parse_braid_line(tokens):
    if tokens[0].text != "braid" or len(tokens) < 5 \
            or tokens[2].text != "strands" or tokens[4].text != "word":
        raise _syntax("expected: braid <name> strands <d> word <letters...>",
                      tokens[0])
    name_token = tokens[1]
    _check_name(name_token, "braid")
    strands = _int(tokens[3], "strand count")
    letters = [(t, _int(t, "braid letter")) for t in tokens[5:]]
    return name_token, strands, letters


def _parse_rho_line(tokens):
    if tokens[0].text != "rho" or len(tokens) < 3 or tokens[2].text != ":":
        raise _syntax("expected: rho <braid> : s<k>=<label> ...", tokens[0])
    name_token = tokens[1]
    table = {}
    for token in tokens[3:]:
        if "=" not in token.text:
            raise _syntax(f"expected s<k>=<label>, got {token.text!r}", token)
        key, label = token.text.split("=", 1)
        if not re.match(r"s[1-9][0-9]*\Z", key):
            raise _syntax(f"strand key must look like s1, s2, ...; got {key!r}",
                          token)
        if key in table:
            raise _syntax(f"duplicate strand key {key!r}", token)
        table[key] = (token, label)
    if not table:
        raise _syntax("empty rho table", name_token)
    return name_token, table


def _parse_cycle_directive(tokens, block):
    head = tokens[0]
    if head.text == "projection":
        if block["projection"] is not None:
            raise _syntax("duplicate projection directive", head)
        if len(tokens) < 2:
            raise _syntax("projection needs at least one vertex", head)
        block["projection"] = tokens[1:]
    elif head.text == "support":
        if block["support"] is not None:
            raise _syntax("duplicate support directive", head)
        block["support"] = tokens[1:]
    elif head.text == "basis":
        if len(tokens) < 4 or tokens[2].text != ":":
            raise _syntax("expected: basis <component> : <id> ...", head)
        block["basis"].append((tokens[1], tokens[3:]))
    elif head.text == "realize":
        if len(tokens) >= 4 and tokens[2].text == "braid" and len(tokens) == 4:
            block["realize"].append((tokens[1], "braid", tokens[3]))
        elif len(tokens) >= 3 and tokens[2].text == "class":
            block["realize"].append((tokens[1], "class", tokens[3:]))
        else:
            raise _syntax(
                "expected: realize <id> braid <name> | realize <id> class A=1 ...",
                head)
    else:
        raise _syntax(f"unknown cycle directive {head.text!r}", head)


def _resolve(component_rows, point_rows, braid_rows, rho_rows, cycle_blocks,
             metadata):
    components = []
    for token, degree, genus in component_rows:
        try:
            components.append(Component(token.text, degree, genus))
        except ValueError as exc:
            raise _syntax(str(exc), token) from None
    component_names = {c.name for c in components}

    points = []
    for name_token, comp_tokens, lk_tokens in point_rows:
        incident = []
        for t in comp_tokens:
            if t.text not in component_names:
                raise _dangling(f"point references unknown component {t.text!r}", t)
            incident.append(t.text)
        lk = {}
        for ta, tb, tv in lk_tokens:
            for t in (ta, tb):
                if t.text not in component_names:
                    raise _dangling(
                        f"linking pair references unknown component {t.text!r}", t)
            pair = tuple(sorted((ta.text, tb.text)))
            if pair in lk:
                raise _syntax(f"duplicate linking pair {pair}", ta)
            lk[pair] = _int(tv, "linking number")
        try:
            points.append(SingularPoint(name_token.text, incident, lk))
        except ValueError as exc:
            raise _syntax(str(exc), name_token) from None

    try:
        curve = CurveCombinatorics(components, points)
    except ValueError as exc:
        raise _syntax(str(exc), line=1, column=1) from None

    braids = {}
    for name, (token, strands, letters) in braid_rows.items():
        try:
            braids[name] = BraidWord(strands, [v for _, v in letters])
        except ValueError as exc:
            bad_line, bad_col = token.line, token.column
            for letter_token, value in letters:
                if value == 0 or abs(value) >= strands:
                    bad_line, bad_col = letter_token.line, letter_token.column
                    break
            raise _strand(str(exc), bad_line, bad_col) from None

    labelings = {}
    for name, (token, table) in rho_rows.items():
        if name not in braids:
            raise _dangling(f"rho table for unknown braid {name!r}", token)
        partition = closure_components(braids[name])
        expected = set(partition.component_names)
        given = set(table)
        if given != expected:
            raise _strand(
                f"rho table strands {sorted(given)} do not match the closure "
                f"components {sorted(expected)} of braid {name}",
                token.line, token.column)
        assignment = {}
        for key, (label_token, label) in table.items():
            if label == "0":
                assignment[key] = CYCLE
            elif label == "-":
                assignment[key] = DROPPED
            elif label in component_names:
                assignment[key] = label
            else:
                raise _dangling(
                    f"rho label {label!r} is not a component, 0, or -",
                    label_token)
        try:
            labelings[name] = StrandLabeling(partition, assignment)
        except ValueError as exc:
            raise _strand(str(exc), token.line, token.column) from None

    for name, (token, _, _) in braid_rows.items():
        if name not in labelings:
            raise _dangling(f"braid {name!r} has no rho table", token)

    cycles = {}
    for cname, block in cycle_blocks.items():
        head = block["token"]
        if block["projection"] is None:
            raise _syntax(f"cycle {cname} has no projection", head)
        projection = Walk([t.text for t in block["projection"]])
        declared_support = None
        if block["support"] is not None:
            declared_support = [t.text for t in block["support"]]
        genus_basis = {}
        for comp_token, id_tokens in block["basis"]:
            if comp_token.text not in component_names:
                raise _dangling(
                    f"basis component {comp_token.text!r} is unknown", comp_token)
            if comp_token.text in genus_basis:
                raise _syntax(f"duplicate basis line for {comp_token.text!r}",
                              comp_token)
            genus_basis[comp_token.text] = [
                _check_name(t, "basis cycle") for t in id_tokens
            ]
        realizations = {}
        for target_token, kind, payload in block["realize"]:
            target = target_token.text
            if target in realizations:
                raise _syntax(f"duplicate realization for {target!r}", target_token)
            if kind == "braid":
                braid_token = payload
                if braid_token.text not in braids:
                    raise _dangling(
                        f"realization references unknown braid {braid_token.text!r}",
                        braid_token)
                realizations[target] = CycleRealization(
                    braid=braids[braid_token.text],
                    labeling=labelings[braid_token.text],
                )
            else:
                coeffs = {}
                for token in payload:
                    if "=" not in token.text:
                        raise _syntax(
                            f"expected <component>=<int>, got {token.text!r}", token)
                    key, value = token.text.split("=", 1)
                    if key not in component_names:
                        raise _dangling(
                            f"class coefficient for unknown component {key!r}",
                            token)
                    try:
                        coeffs[key] = int(value)
                    except ValueError:
                        raise _syntax(
                            f"coefficient for {key!r} is not an integer", token
                        ) from None
                realizations[target] = CycleRealization(coefficients=coeffs)
        try:
            cycles[cname] = CycleSpec(cname, projection, curve, genus_basis,
                                      realizations, declared_support)
        except ValueError as exc:
            raise _syntax(str(exc), head) from None

    return FixtureDocument(curve, cycles, braids, labelings, metadata)


def serialize_fixture(doc: FixtureDocument) -> str:
    """Canonical text form; parse(serialize(parse(t))) is stable."""
    lines = ["[components]"]
    for c in doc.curve.components:
        lines.append(f"{c.name} {c.degree} {c.genus}")
    if doc.curve.singular_points:
        lines.append("")
        lines.append("[points]")
        for p in doc.curve.singular_points:
            parts = [p.name, ":", *p.components]
            for (a, b), v in sorted(p.local_lk.items()):
                parts += [";", "lk", a, b, str(v)]
            lines.append(" ".join(parts))
    if doc.cycles:
        lines.append("")
        lines.append("[cycles]")
        for cname, cycle in doc.cycles.items():
            lines.append(f"cycle {cname}")
            lines.append("  projection " + " ".join(cycle.projection.vertices))
            for comp in cycle.internal_support:
                ids = cycle.genus_basis.get(comp, ())
                if ids:
                    lines.append(f"  basis {comp} : " + " ".join(ids))
            order = list(cycle.basis_ids())
            if cname in cycle.realizations:
                order.append(cname)
            for target in order:
                if target not in cycle.realizations:
                    continue
                realization = cycle.realizations[target]
                if realization.is_braid:
                    name = _braid_name_of(doc, realization)
                    lines.append(f"  realize {target} braid {name}")
                else:
                    coeffs = " ".join(
                        f"{k}={v}" for k, v in sorted(realization.coefficients.items())
                    )
                    lines.append(f"  realize {target} class {coeffs}".rstrip())
    if doc.braids:
        lines.append("")
        lines.append("[braids]")
        for name, word in doc.braids.items():
            suffix = f" {word.to_text()}" if word.letters else ""
            lines.append(f"braid {name} strands {word.strand_count} word{suffix}")
        lines.append("")
        lines.append("[rho]")
        for name, labeling in doc.labelings.items():
            entries = []
            for key in sorted(labeling.assignment, key=lambda s: int(s[1:])):
                label = labeling.assignment[key]
                text = "0" if label == CYCLE else ("-" if label == DROPPED else label)
                entries.append(f"{key}={text}")
            lines.append(f"rho {name} : " + " ".join(entries))
    if doc.metadata:
        lines.append("")
        lines.append("[meta]")
        lines.extend(doc.metadata)
    return "\n".join(lines) + "\n"
