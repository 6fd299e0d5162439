"""Verbatim anchors for every rule of the ledger, keyed by a short name."""

from __future__ import annotations

CITATIONS: dict[str, str] = {
    "torus": r"order at most~$\Upsilon(n)^n$",
    "upsilon_1": r"\Upsilon(1)=2",
    "upsilon_2": r"\Upsilon(2)=12",
    "upsilon_3": r"\Upsilon(3)=48",
    "upsilon_mod3": r"\Upsilon(n)\leqslant |\operatorname{GL}_n(\mathbb{Z}/3\mathbb{Z})|",
    "sb_division": r"$g^{n}=1$ and $|G|\leqslant {n}^{2(n-1)}$",
    "sb_27": r"$|G|\leqslant 27$",
    "sb_split": r"arbitrarily large finite order",
    "sb_p": r"semi-direct product $G=H\rtimes S$",
    "quadric_odd": r"at most~$2^{n-1}$",
    "quadric_even": r"at most~$8^{n-1}$",
    "quadric_4": r"at most~$32$",
    "quadric_point": r"if and only if~\mbox{$Q(\mathbb{K})=\varnothing$}",
    "dp_432": r"$|G|\leqslant 432$",
    "dp6": r"$12\cdot 36=432$",
    "dp_char2": r"$|G|' \leqslant 108$",
    "dp_char3": r"$|G|' \leqslant 48$",
    "dp_low_any": r"$696\,729\,600$",
    "dp_low_char0": r"$|\operatorname{Aut}(X)|\leqslant 648$",
    "dp9": r"we have $|G|\leqslant 81$",
    "dp_coprime_trivial": r"so that~\mbox{$|G|'=1$}",
    "dp7": r"that $d=8$ and $X$ is",
    "conic_bundle": r"d(m)= 16 m!$ works in all cases",
    "conic_bundle_small": r"then  $|G| \leqslant 16$",
    "conic_bundle_product": r"is birational to  the product of $\mathbb{P}^1$ and a conic",
    "brauer_product": r"thus, has order $2$",
    "brauer_sb": r"has order $3$",
    "brauer_conics": r"has order $4$",
    "brauer_quadric": r"is trivial",
    "torsion_empty": r"to be the empty set",
    "torsion_2": r"we set $\mathcal{T}(H)=\{2\}$",
    "torsion_23": r"$\mathcal{T}(H)= \{2, 3\}$",
    "torsion_235": r"$\mathcal{T}(H)= \{2, 3, 5\}$",
    "lag": r"there exists a constant $L=L(r,n)$",
    "bir_unbounded": r"has unbounded finite subgroups",
}


def cite(key: str) -> str:
    return CITATIONS[key]
