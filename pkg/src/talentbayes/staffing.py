"""Candidate ranking and team recommendation.

"Identify a correct team" is realized as top-k by posterior of a
manager-chosen target class (default: the first declared label,
conventionally "good"). An optional absolute threshold turns the ranking
into a recommended/not-recommended cut, even if that leaves the team
undersized. Scores are model conditionals, not causal claims.
"""

from __future__ import annotations

from dataclasses import dataclass

from .classifier import NaiveBayesModel, predict
from .data import MISSING, CleaningReport, _clean_cell, _read_rows
from .errors import DataError
from .schema import NUMERIC, AttributeSchema


@dataclass(frozen=True)
class Candidate:
    id: str
    values: dict

    def __post_init__(self):
        if not self.id:
            raise DataError("candidate id must be non-empty")


@dataclass(frozen=True)
class TeamRecommendation:
    members: tuple  # (id, posterior of target class), best first
    target_class: str
    team_size: int
    undersized: bool


def load_pool(csv_text: str, schema: AttributeSchema) -> list[Candidate]:
    """Parse a candidate pool CSV: an `id` column plus predictor columns.

    Same cell cleaning as datasets ('?'/empty is missing, whitespace is
    trimmed), but every problem is a hard error: pool rows are identified
    individuals, so silently dropping one would corrupt a staffing
    decision.
    """
    header_raw, body = _read_rows(csv_text)
    header = [h.strip() for h in header_raw]
    if "id" not in header:
        raise DataError("pool CSV needs an 'id' column")
    id_col = header.index("id")
    for name in header:
        if name != "id" and not schema.has_attribute(name):
            raise DataError(f"unknown column {name!r}")

    scratch = CleaningReport()
    candidates: list[Candidate] = []
    seen_ids = set()
    for row_number, row in enumerate(body, start=2):
        if len(row) != len(header):
            raise DataError(f"row {row_number}: expected {len(header)} fields, got {len(row)}")
        values: dict = {}
        candidate_id = None
        for i, raw in enumerate(row):
            cell = _clean_cell(raw, scratch)
            if i == id_col:
                if cell is MISSING:
                    raise DataError(f"row {row_number}: empty candidate id")
                candidate_id = cell
                continue
            name = header[i]
            if cell is MISSING:
                values[name] = MISSING
            elif schema.attribute(name).kind == NUMERIC:
                try:
                    values[name] = float(cell)
                except ValueError:
                    raise DataError(
                        f"row {row_number}: unparsable numeric value {cell!r} "
                        f"for attribute {name!r}") from None
            else:
                values[name] = cell
        if candidate_id in seen_ids:
            raise DataError(f"duplicate candidate id {candidate_id!r}")
        seen_ids.add(candidate_id)
        candidates.append(Candidate(candidate_id, values))
    if not candidates:
        raise DataError("pool CSV has no candidate rows")
    return candidates


def _check_pool(candidates) -> None:
    if not candidates:
        raise DataError("candidate pool is empty")
    seen = set()
    for c in candidates:
        if c.id in seen:
            raise DataError(f"duplicate candidate id {c.id!r}")
        seen.add(c.id)


def rank_candidates(model: NaiveBayesModel, candidates: list[Candidate],
                    target_class: str) -> list[tuple[str, float]]:
    """Score every candidate by posterior of the target class, best first.

    Ties are broken by ascending id, which also makes the output
    independent of the pool's input order.
    """
    if target_class not in model.schema.class_labels:
        raise DataError(f"unknown target class {target_class!r}")
    _check_pool(candidates)
    scored = [(c.id, predict(model, c.values).posterior[target_class])
              for c in candidates]
    scored.sort(key=lambda pair: (-pair[1], pair[0]))
    return scored


def recommend_team(model: NaiveBayesModel, candidates: list[Candidate],
                   team_size: int, target_class: str | None = None,
                   threshold: float | None = None) -> TeamRecommendation:
    """Top team_size of the ranking; a threshold may leave the team undersized."""
    if team_size < 1:
        raise DataError("team_size must be at least 1")
    if target_class is None:
        target_class = model.schema.class_labels[0]
    ranked = rank_candidates(model, candidates, target_class)
    if threshold is not None:
        ranked = [(cid, score) for cid, score in ranked if score >= threshold]
    members = tuple(ranked[:team_size])
    return TeamRecommendation(
        members=members,
        target_class=target_class,
        team_size=team_size,
        undersized=len(members) < team_size,
    )


def team_to_doc(team: TeamRecommendation) -> dict:
    return {
        "members": [{"id": cid, "score": score} for cid, score in team.members],
        "target_class": team.target_class,
        "team_size": team.team_size,
        "undersized": team.undersized,
    }


def render_team(team: TeamRecommendation) -> str:
    lines = [f"recommended team (target={team.target_class}, requested size={team.team_size})"]
    for rank, (cid, score) in enumerate(team.members, start=1):
        lines.append(f"{rank:>3}. {cid}  P({team.target_class})={score:.4f}")
    if team.undersized:
        lines.append("warning: team is undersized")
    return "\n".join(lines)
