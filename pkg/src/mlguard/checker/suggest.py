"""Did-you-mean suggestions based on Damerau-Levenshtein distance."""
from __future__ import annotations

MAX_DISTANCE = 2


def damerau_levenshtein(a: str, b: str) -> int:
    """Edit distance with insertions, deletions, substitutions and adjacent
    transpositions, each costing 1 (unrestricted variant: a transposed pair may
    be edited again)."""
    inf = len(a) + len(b)
    last_row: dict[str, int] = {}
    # d is offset by one in both axes so the sentinel row/column can hold inf
    d = [[inf] * (len(b) + 2) for _ in range(len(a) + 2)]
    for i in range(len(a) + 1):
        d[i + 1][0] = inf
        d[i + 1][1] = i
    for j in range(len(b) + 1):
        d[0][j + 1] = inf
        d[1][j + 1] = j
    for i in range(1, len(a) + 1):
        last_match_col = 0
        for j in range(1, len(b) + 1):
            k = last_row.get(b[j - 1], 0)
            l = last_match_col
            cost = 1
            if a[i - 1] == b[j - 1]:
                cost = 0
                last_match_col = j
            d[i + 1][j + 1] = min(
                d[i][j] + cost,
                d[i + 1][j] + 1,
                d[i][j + 1] + 1,
                d[k][l] + (i - k - 1) + 1 + (j - l - 1),
            )
        last_row[a[i - 1]] = i
    return d[len(a) + 1][len(b) + 1]


def suggest_fix(offending: str, candidates: list[str]) -> list[str]:
    """Candidates within distance 2 of ``offending``, nearest first, ties in input order."""
    scored = []
    for pos, cand in enumerate(candidates):
        dist = damerau_levenshtein(offending, cand)
        if dist <= MAX_DISTANCE:
            scored.append((dist, pos, cand))
    return [cand for _, _, cand in sorted(scored)]
