"""Reading and writing ``.isys``, ``.amap`` and ``.wts`` files.

All three are line oriented: one ``directive: body`` per line, ``#`` starts
a comment, identifiers match ``[A-Za-z0-9_.-]+`` and ``{}`` is the empty
token list.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction
from pathlib import Path

from ._bits import bits, mask_key
from .errors import ParseError, TooLarge
from .fixpoints import FinitaryInfoSystem
from .infosys import InfoSystem, chain_closure, label_key, saturate
from .mappings import ApproxMapping, saturate_mapping

IDENT = re.compile(r"^[A-Za-z0-9_.-]+$")
DUMP_LIMIT = 12


def _lines(text):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError("expected 'directive: ...'", no)
        key, body = line.split(":", 1)
        yield no, key.strip(), body.strip()


def _idents(body, no):
    body = body.strip()
    if body == "{}":
        return []
    out = body.split()
    for t in out:
        if not IDENT.match(t):
            raise ParseError(f"bad identifier {t!r}", no)
    return out


def _sides(body, no):
    if body.count("=>") != 1:
        raise ParseError("expected exactly one '=>'", no)
    lhs, rhs = body.split("=>")
    return _idents(lhs, no), _idents(rhs, no)


def parse_element(text, line=None):
    """``{a,b}`` (commas or spaces) to a frozenset of identifiers."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ParseError(f"element literal must be braced: {text!r}", line)
    inner = s[1:-1].replace(",", " ").split()
    for t in inner:
        if not IDENT.match(t):
            raise ParseError(f"bad identifier {t!r}", line)
    return frozenset(inner)


def format_element(x):
    return "{" + ",".join(sorted(map(str, x), key=label_key)) + "}"


# .isys ---------------------------------------------------------------------

def parse_isys(text):
    kind, tokens, nabla, gens = "algebraic", None, None, []
    known = set()
    for no, key, body in _lines(text):
        if key == "kind":
            if body not in ("algebraic", "finitary"):
                raise ParseError(f"unknown kind {body!r}", no)
            kind = body
        elif key == "tokens":
            if tokens is not None:
                raise ParseError("duplicate tokens directive", no)
            tokens = _idents(body, no)
            if len(set(tokens)) != len(tokens):
                raise ParseError("repeated token", no)
            known = set(tokens)
        elif key == "false":
            ids = _idents(body, no)
            if len(ids) != 1:
                raise ParseError("false takes exactly one token", no)
            nabla = ids[0]
        elif key == "entail":
            lhs, rhs = _sides(body, no)
            gens.append((no, lhs, rhs))
        else:
            raise ParseError(f"unknown directive {key!r}", no)
    if tokens is None:
        raise ParseError("missing tokens directive")
    if nabla is None:
        raise ParseError("missing false directive")
    if nabla not in known:
        raise ParseError(f"false token {nabla!r} is not declared")
    for no, lhs, rhs in gens:
        for t in lhs + rhs:
            if t not in known:
                raise ParseError(f"unknown token {t!r}", no)
    pairs = [(lhs, rhs) for _, lhs, rhs in gens]
    if kind == "finitary":
        return FinitaryInfoSystem.from_generators(tokens, nabla, pairs)
    return saturate(tokens, nabla, pairs, bound=None)


def load_isys(path):
    return parse_isys(Path(path).read_text(encoding="utf-8"))


def _plain_labels(sys):
    """Identifier-safe names for the tokens, plus comment lines for renamed ones."""
    toks = list(sys.tokens)
    if all(isinstance(t, str) and IDENT.match(t) for t in toks):
        return {t: t for t in toks}, []
    names, notes = {}, []
    for i, t in enumerate(toks):
        names[t] = "nabla" if t == sys.nabla else f"t{i}"
        if isinstance(t, frozenset):
            shown = format_element(t)
        elif isinstance(t, tuple):
            shown = "(" + ", ".join(format_element(p) for p in t) + ")"
        else:
            shown = str(t)
        notes.append(f"# {names[t]} = {shown}")
    return names, notes


def _side(names, sys, m):
    ts = [names[sys.tokens[i]] for i in bits(m)]
    return " ".join(ts) if ts else "{}"


def dump_isys(sys):
    """Text whose parse gives back the same entailment (greedy generator cover)."""
    if len(sys) > DUMP_LIMIT:
        raise TooLarge(f"dump limited to {DUMP_LIMIT} tokens")
    finitary = isinstance(sys, FinitaryInfoSystem)
    names, notes = _plain_labels(sys)
    lines = list(notes)
    if finitary:
        lines.append("kind: finitary")
    lines.append("tokens: " + " ".join(names[t] for t in sys.tokens))
    lines.append(f"false: {names[sys.nabla]}")
    nb = sys.nabla_bit
    target = sys.out_mask if finitary else sys.closure_mask
    rules = []
    for u in sorted(range(sys.full + 1), key=mask_key):
        if u >> nb & 1:
            continue
        want = target(u)
        if finitary:
            have = 0
            for a, b in rules:
                if a & ~u == 0:
                    have |= b
            have = sys.full if have >> nb & 1 else have
        else:
            have = chain_closure(rules, None, nb, sys.full)(u) | u
        if have != want:
            rhs = (1 << nb) if want >> nb & 1 else want & ~(0 if finitary else u)
            rules.append((u, rhs))
            lines.append(f"entail: {_side(names, sys, u)} => {_side(names, sys, rhs)}")
    return "\n".join(lines) + "\n"


# .amap ---------------------------------------------------------------------

class _Resolved:
    def __init__(self, sys, decode=None):
        self.sys = sys
        self.decode = decode or (lambda t: t)


def resolve_system(ref, base_dir="."):
    """``F.isys``, ``F.isys+top`` or ``sub(F.isys)``."""
    ref = ref.strip()
    m = re.match(r"^sub\((.+)\)$", ref)
    if m:
        from .subdomains import SubSystem
        S = SubSystem(resolve_system(m.group(1), base_dir).sys)

        def decode(t):
            if t == "nabla":
                return S.nabla
            if not re.match(r"^t[0-9]+$", t) or int(t[1:]) >= len(S):
                raise ParseError(f"unknown token {t!r} of Sub")
            return S.tokens[int(t[1:])]

        return _Resolved(S, decode)
    top = ref.endswith("+top")
    path = ref[:-4] if top else ref
    full = path if os.path.isabs(path) else os.path.join(base_dir, path)
    try:
        A = load_isys(full)
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    if not isinstance(A, InfoSystem):
        raise ParseError(f"{path} is not an algebraic system")
    return _Resolved(A.add_top() if top else A)


def parse_amap(text, base_dir="."):
    header, pairs = None, []
    for no, key, body in _lines(text):
        if key == "map":
            if header is not None:
                raise ParseError("duplicate map header", no)
            if body.count("->") != 1:
                raise ParseError("expected 'map: SRC -> DST'", no)
            header = [s.strip() for s in body.split("->")]
        elif key == "pair":
            pairs.append((no, *_sides(body, no)))
        else:
            raise ParseError(f"unknown directive {key!r}", no)
    if header is None:
        raise ParseError("missing map header")
    src = resolve_system(header[0], base_dir)
    dst = resolve_system(header[1], base_dir)
    gens = []
    for no, lhs, rhs in pairs:
        try:
            u = [src.decode(t) for t in lhs]
            v = [dst.decode(t) for t in rhs]
            src.sys.mask(u), dst.sys.mask(v)
        except ValueError as e:
            raise ParseError(str(e), no) from None
        gens.append((u, v))
    return saturate_mapping(src.sys, dst.sys, gens)


def load_amap(path):
    p = Path(path)
    return parse_amap(p.read_text(encoding="utf-8"), str(p.parent))


def dump_amap(f: ApproxMapping, src_ref, dst_ref):
    """One generator per source element: the element and its largest output."""
    sn, notes_s = _plain_labels(f.src)
    dn, notes_d = _plain_labels(f.dst)
    lines = notes_s + notes_d + [f"map: {src_ref} -> {dst_ref}"]
    for x in f.src.element_masks():
        out = f.out_mask(x)
        lines.append(f"pair: {_side(sn, f.src, x)} => {_side(dn, f.dst, out)}")
    return "\n".join(lines) + "\n"


# .wts ----------------------------------------------------------------------

def parse_wts(text):
    weights = {}
    for no, key, body in _lines(text):
        if key != "weight":
            raise ParseError(f"unknown directive {key!r}", no)
        m = re.match(r"^(\{[^}]*\})\s+(-?[0-9]+(?:/[0-9]+)?)$", body)
        if not m:
            raise ParseError("expected 'weight: {a,b} p/q'", no)
        x = parse_element(m.group(1), no)
        if x in weights:
            raise ParseError(f"duplicate weight for {m.group(1)}", no)
        try:
            weights[x] = Fraction(m.group(2))
        except ZeroDivisionError:
            raise ParseError("zero denominator", no) from None
    return weights


def load_wts(path):
    return parse_wts(Path(path).read_text(encoding="utf-8"))


def dump_wts(weights):
    rows = sorted(weights.items(), key=lambda kv: (len(kv[0]), sorted(map(str, kv[0]))))
    return "".join(f"weight: {format_element(x)} {w.numerator}/{w.denominator}\n" for x, w in rows)


def load_any(path):
    """Dispatch on extension; unknown extensions are a ParseError."""
    ext = Path(path).suffix
    loaders = {".isys": load_isys, ".amap": load_amap, ".wts": load_wts}
    if ext not in loaders:
        raise ParseError(f"unknown file extension {ext!r}")
    return loaders[ext](path)
