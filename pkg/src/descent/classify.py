"""
Representation type of descent algebras: the closed-form classification as
a lookup, and its comparison with certificates computed from the Ext-quiver.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .coxeter import CoxeterType
from .errors import OutOfScope
from .quivers import FINITE, TAME, WILD, RepTypeVerdict, rep_type_certificate


def _load_uncertified() -> list:
    text = (resources.files("descent") / "data" / "uncertified.txt").read_text(encoding="utf-8")
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            family, rank, p, reason = line.split(None, 3)
            rows.append((family, rank, p, reason))
    return rows


UNCERTIFIED = _load_uncertified()


def _p_matches(rule: str, p: int) -> bool:
    if rule.endswith("+"):
        return p == 0 or p >= int(rule[:-1])
    return p == int(rule)


def uncertified_reason(family: str, rank: int, p: int):
    """
    Reason a (type, rank, p) case is expected to have no certificate, or
    None.  For ``I`` the rank is the dihedral parameter.
    """
    for f, r, ps, reason in UNCERTIFIED:
        if f != family or not _p_matches(ps, p):
            continue
        if r == str(rank) or (r == "even" and rank % 2 == 0):
            return reason
    return None


def _at_least(p: int, k: int) -> bool:
    """p >= k, where characteristic 0 stands for p = infinity."""
    return p == 0 or p >= k


def lookup_verdict(ctype: CoxeterType, p: int) -> RepTypeVerdict:
    f, r = ctype.family, ctype.rank
    if f == "A":
        n = r + 1
        finite = (p == 2 and n <= 3) or (p == 3 and n <= 4) or (_at_least(p, 5) and n <= 5)
        v = FINITE if finite else WILD
    elif f == "B":
        if _at_least(p, 3) and r <= 4:
            v = FINITE
        elif p == 2 and r == 2:
            v = TAME
        else:
            v = WILD
    elif f == "D":
        if r < 4:
            raise OutOfScope(f"D_{r} is below the classified range")
        v = TAME if (_at_least(p, 5) and r == 4) else WILD
    elif f == "I":
        v = TAME if (p == 2 and ctype.m % 2 == 0) else FINITE
    elif f == "F":
        v = TAME if _at_least(p, 5) else WILD
    elif f == "H" and r == 3:
        v = WILD if p == 2 else TAME
    elif f == "H" and r == 4:
        v = WILD
    elif f == "E" and r in (6, 7):
        v = WILD
    else:
        raise OutOfScope(f"{ctype.name} is not covered by the classification")
    return RepTypeVerdict(v, "PaperLookup")


@dataclass(frozen=True)
class CrossCheck:
    ctype: CoxeterType
    p: int
    lookup: RepTypeVerdict
    certificate: RepTypeVerdict | None
    status: str

    @property
    def reason(self):
        c = self.ctype
        return uncertified_reason(c.family, c.m if c.family == "I" else c.rank, self.p)

    def __str__(self) -> str:
        cert = "none" if self.certificate is None else str(self.certificate)
        return f"{self.ctype.name} p={self.p}: {self.status} lookup={self.lookup.verdict} certificate={cert}"


def cross_check(analysis) -> CrossCheck:
    """Compare the lookup with the certificate of a computed FieldAnalysis."""
    alg, p = analysis.alg, analysis.p
    ctype = alg.system.ctype
    lookup = lookup_verdict(ctype, p)
    cert = rep_type_certificate(analysis.quiver, analysis.rad_squared_zero, alg.dim)
    if cert is None:
        status = "CERTIFICATE_NONE"
    elif cert.verdict == lookup.verdict:
        status = "AGREE"
    else:
        status = "CONFLICT"
    return CrossCheck(ctype, p, lookup, cert, status)


def acceptable(check: CrossCheck) -> bool:
    """AGREE, or an uncertified case that is on the expected list."""
    if check.status == "AGREE":
        return True
    if check.status == "CERTIFICATE_NONE":
        return check.reason is not None
    return False
