"""
Concrete permutation groups used to build Cayley graphs.

Group specs: "cyclic:n", "dihedral:n", "symmetric:k" (k <= 5) and
"product:(A,B)" for any two specs. Every group is realised as permutations of
a small point set; its elements are listed in lexicographic order of their
image arrays, which fixes the vertex numbering of Cayley graphs.

Element tokens:
    cyclic      "+k", "-k", "k"        rotation i -> i + k
    dihedral    "r<k>", "s<k>"         rotation i -> i + k, reflection i -> k - i
    symmetric   "(0 1 2)(3 4)"         disjoint cycles on 0-based points
    product     "x*y"                  one token per factor
    any group   "[2,0,1]"              raw image array
"""
import itertools
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Tuple

from .errors import GroupSpecError

Permutation = Tuple[int, ...]

MAX_SYMMETRIC_DEGREE = 5


def split_top_level(text: str, sep: str = ",") -> List[str]:
    """Split on `sep` outside of (), [] and <> brackets."""
    parts, depth, current = [], 0, []
    for char in text:
        if char in "([<":
            depth += 1
        elif char in ")]>":
            depth -= 1
            if depth < 0:
                raise GroupSpecError(f"unbalanced brackets in {text!r}", op="split_top_level")
        if char == sep and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(char)
    if depth != 0:
        raise GroupSpecError(f"unbalanced brackets in {text!r}", op="split_top_level")
    parts.append("".join(current).strip())
    return parts


@dataclass(frozen=True)
class CayleyGroup:
    spec: str
    degree: int                              # points the group permutes
    elements: Tuple[Permutation, ...]        # lexicographic order
    arity: int = 1                           # leaf factors, for product tokens
    parse_leaf: Callable[[str], Permutation] = field(default=None, compare=False, repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self) -> Dict[Permutation, int]:
        return {element: i for i, element in enumerate(self.elements)}

    def parse_element(self, token: str) -> Permutation:
        token = token.strip()
        if token.startswith("["):
            try:
                images = tuple(int(x) for x in token.strip("[]").split(",") if x.strip())
            except ValueError:
                raise GroupSpecError(f"bad image array {token!r}", op="parse_element")
            element = images
        else:
            element = self.parse_leaf(token)
        if element not in set(self.elements):
            raise GroupSpecError(f"{token!r} is not an element of {self.spec}", op="parse_element")
        return element

    def parse_connection(self, text: str) -> List[Permutation]:
        tokens = [t for t in split_top_level(text) if t]
        if not tokens:
            raise GroupSpecError("connection set is empty", op="parse_connection")
        return [self.parse_element(t) for t in tokens]


def _rotation(n: int, k: int) -> Permutation:
    return tuple((i + k) % n for i in range(n))


def _reflection(n: int, k: int) -> Permutation:
    return tuple((k - i) % n for i in range(n))


def _int_token(token: str, op: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise GroupSpecError(f"expected an integer, got {token!r}", op=op)


def cyclic(n: int) -> CayleyGroup:
    if n < 1:
        raise GroupSpecError(f"cyclic group needs n >= 1, got {n}", op="cyclic")

    def parse(token: str) -> Permutation:
        return _rotation(n, _int_token(token, "cyclic"))

    elements = tuple(sorted({_rotation(n, k) for k in range(n)}))
    return CayleyGroup(f"cyclic:{n}", n, elements, 1, parse)


def dihedral(n: int) -> CayleyGroup:
    if n < 3:
        raise GroupSpecError(f"dihedral group needs n >= 3, got {n}", op="dihedral")

    def parse(token: str) -> Permutation:
        if token[:1] == "r":
            return _rotation(n, _int_token(token[1:], "dihedral"))
        if token[:1] == "s":
            return _reflection(n, _int_token(token[1:], "dihedral"))
        raise GroupSpecError(f"dihedral tokens are r<k> or s<k>, got {token!r}", op="dihedral")

    elements = tuple(sorted({_rotation(n, k) for k in range(n)} | {_reflection(n, k) for k in range(n)}))
    return CayleyGroup(f"dihedral:{n}", n, elements, 1, parse)


def symmetric(k: int) -> CayleyGroup:
    if not 1 <= k <= MAX_SYMMETRIC_DEGREE:
        raise GroupSpecError(f"symmetric group degree must be in [1, {MAX_SYMMETRIC_DEGREE}], got {k}", op="symmetric")

    def parse(token: str) -> Permutation:
        images = list(range(k))
        cycles = re.findall(r"\(([^()]*)\)", token)
        if "".join(f"({c})" for c in cycles).replace(" ", "") != token.replace(" ", ""):
            raise GroupSpecError(f"bad cycle notation {token!r}", op="symmetric")
        seen = set()
        for cycle in cycles:
            points = [_int_token(p, "symmetric") for p in cycle.split()]
            if any(p < 0 or p >= k or p in seen for p in points):
                raise GroupSpecError(f"cycles in {token!r} are not disjoint points of [0, {k})", op="symmetric")
            seen.update(points)
            for i, p in enumerate(points):
                images[p] = points[(i + 1) % len(points)]
        return tuple(images)

    elements = tuple(itertools.permutations(range(k)))
    return CayleyGroup(f"symmetric:{k}", k, elements, 1, parse)


def product(left: CayleyGroup, right: CayleyGroup) -> CayleyGroup:
    shift = left.degree

    def combine(a: Permutation, b: Permutation) -> Permutation:
        return a + tuple(shift + x for x in b)

    def parse(token: str) -> Permutation:
        parts = token.split("*")
        if len(parts) != left.arity + right.arity:
            raise GroupSpecError(
                f"product token {token!r} needs {left.arity + right.arity} '*'-separated parts", op="product"
            )
        a = left.parse_element("*".join(parts[:left.arity]))
        b = right.parse_element("*".join(parts[left.arity:]))
        return combine(a, b)

    elements = tuple(sorted(combine(a, b) for a in left.elements for b in right.elements))
    return CayleyGroup(
        f"product:({left.spec},{right.spec})",
        left.degree + right.degree,
        elements,
        left.arity + right.arity,
        parse,
    )


GROUP_FAMILIES = {
    "cyclic": cyclic,
    "dihedral": dihedral,
    "symmetric": symmetric,
}


def parse_group_spec(text: str) -> CayleyGroup:
    """Parse 'cyclic:n', 'dihedral:n', 'symmetric:k' or 'product:(A,B)'."""
    text = text.strip()
    name, sep, argument = text.partition(":")
    if not sep:
        raise GroupSpecError(f"group spec {text!r} must look like family:argument", op="parse_group_spec")
    name = name.strip().lower()
    argument = argument.strip()
    if name == "product":
        if not (argument.startswith("(") and argument.endswith(")")):
            raise GroupSpecError(f"product spec must be product:(A,B), got {text!r}", op="parse_group_spec")
        factors = split_top_level(argument[1:-1])
        if len(factors) != 2:
            raise GroupSpecError(f"product spec needs exactly two factors, got {text!r}", op="parse_group_spec")
        return product(parse_group_spec(factors[0]), parse_group_spec(factors[1]))
    if name not in GROUP_FAMILIES:
        raise GroupSpecError(
            f"unknown group family {name!r}; expected one of {sorted(GROUP_FAMILIES) + ['product']}",
            op="parse_group_spec",
        )
    return GROUP_FAMILIES[name](_int_token(argument, "parse_group_spec"))
