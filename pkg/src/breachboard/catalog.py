"""Token catalog: attacker/defender token sets, trick tags, psychological
factor taxonomy, name aliasing, and the seeded matchup verdicts.

The catalog is data-driven: the shipped default lives in
``data/default_catalog.json`` and organizations can load their own file with
the same schema (top-level lists ``attacker_tokens``, ``defender_tokens``,
``matchups``).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterator, Mapping


class CatalogError(ValueError):
    """Raised when a catalog document fails validation."""


class Role(str, Enum):
    ATTACKER = "attacker"
    DEFENDER = "defender"

    @property
    def prefix(self) -> str:
        return "A" if self is Role.ATTACKER else "D"

    @property
    def opponent(self) -> "Role":
        return Role.DEFENDER if self is Role.ATTACKER else Role.ATTACKER


TOKENS_PER_ROLE = 13

# Canonical trick vocabularies per side. The source table contains a few
# spelling variants ("Threat", "Treats landscape", inconsistent casing);
# those are folded into the canonical names at load time.
ATTACKER_TRICKS = frozenset({
    "Deceptive",
    "False information",
    "Threats",
    "Lack of training",
    "Distraction",
    "Lack of accountability",
    "Lack of technology",
})
DEFENDER_TRICKS = frozenset({
    "Risk management",
    "Audit",
    "Security policy",
    "Strategic thinking",
    "Intrusion prevention",
    "Training",
    "Autonomy",
    "Data classification",
    "Threats landscape",
    "Collaboration",
    "Security tool",
    "Incident response",
})
_TRICK_SPELLINGS = {
    "threat": "Threats",
    "treats landscape": "Threats landscape",
}

_TOKEN_ID_RE = re.compile(r"^([AD])(\d{1,2})$")


@dataclass(frozen=True, slots=True, order=True)
class TokenId:
    """Identity of one token type, e.g. A7 or D13."""

    role: Role
    index: int

    def __post_init__(self) -> None:
        if not 1 <= self.index <= TOKENS_PER_ROLE:
            raise CatalogError(f"token index {self.index} outside 1..{TOKENS_PER_ROLE}")

    def __str__(self) -> str:
        return f"{self.role.prefix}{self.index}"

    @classmethod
    def parse(cls, text: str) -> "TokenId":
        m = _TOKEN_ID_RE.match(text.strip().upper())
        if not m:
            raise CatalogError(f"malformed token id {text!r}")
        role = Role.ATTACKER if m.group(1) == "A" else Role.DEFENDER
        return cls(role, int(m.group(2)))


@dataclass(frozen=True, slots=True)
class TrickTag:
    """Psychological trick label a token plays on ("Deceptive", "Audit", ...)."""

    name: str
    side: Role

    def __post_init__(self) -> None:
        valid = ATTACKER_TRICKS if self.side is Role.ATTACKER else DEFENDER_TRICKS
        if self.name not in valid:
            raise CatalogError(f"unknown {self.side.value} trick tag {self.name!r}")


@dataclass(frozen=True, slots=True)
class TokenDef:
    id: TokenId
    label: str
    definition: str
    trick: TrickTag
    aliases: tuple[str, ...] = ()


@dataclass(frozen=True, slots=True)
class PsychFactor:
    """One psychological factor of data protection (reporting metadata only)."""

    name: str
    pole: str  # "vulnerability" | "protection"


VULNERABILITY_FACTORS = (
    "lack of control",
    "distrust",
    "apathy",
    "exposure",
    "misconception",
    "ignorance",
    "powerlessness",
)
PROTECTION_FACTORS = ("safety",)
# Stimuli of the two poles, kept alongside the factors for reporting.
PSYCH_STIMULI = ("data diligence", "data negligence")

PSYCH_FACTORS: tuple[PsychFactor, ...] = tuple(
    [PsychFactor(name, "vulnerability") for name in VULNERABILITY_FACTORS]
    + [PsychFactor(name, "protection") for name in PROTECTION_FACTORS]
)


@dataclass(frozen=True, slots=True)
class MatchupEntry:
    """One judged attacker-vs-defender verdict."""

    attacker: TokenId
    defender: TokenId
    winner: Role
    comment: str = ""


@dataclass(frozen=True)
class MatchupMatrix:
    """Partial table of judged verdicts keyed by (attacker, defender) pair.

    Pairs absent from the table are explicitly unjudged; no verdict is ever
    invented for them (the judge scores them as no-points).
    """

    entries: tuple[MatchupEntry, ...]
    _by_pair: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        by_pair: dict[tuple[TokenId, TokenId], MatchupEntry] = {}
        for entry in self.entries:
            if entry.attacker.role is not Role.ATTACKER:
                raise CatalogError(f"matchup attacker {entry.attacker} is not an attacker token")
            if entry.defender.role is not Role.DEFENDER:
                raise CatalogError(f"matchup defender {entry.defender} is not a defender token")
            key = (entry.attacker, entry.defender)
            existing = by_pair.get(key)
            if existing is not None and existing.winner is not entry.winner:
                raise CatalogError(
                    f"conflicting verdicts for ({entry.attacker}, {entry.defender})"
                )
            by_pair.setdefault(key, entry)
        object.__setattr__(self, "_by_pair", by_pair)

    def get(self, attacker: TokenId, defender: TokenId) -> MatchupEntry | None:
        return self._by_pair.get((attacker, defender))

    def __len__(self) -> int:
        return len(self._by_pair)

    def __iter__(self) -> Iterator[MatchupEntry]:
        return iter(self.entries)


@dataclass(frozen=True)
class Catalog:
    """Validated, immutable token catalog plus its seeded matchup matrix."""

    attacker_tokens: tuple[TokenDef, ...]
    defender_tokens: tuple[TokenDef, ...]
    matchups: MatchupMatrix
    _by_id: dict = field(init=False, repr=False, compare=False)
    _by_name: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        by_id: dict[TokenId, TokenDef] = {}
        by_name: dict[tuple[Role, str], TokenId] = {}
        for role, tokens in ((Role.ATTACKER, self.attacker_tokens),
                             (Role.DEFENDER, self.defender_tokens)):
            if len(tokens) != TOKENS_PER_ROLE:
                raise CatalogError(
                    f"{role.value} count {len(tokens)} ≠ {TOKENS_PER_ROLE}"
                )
            for tok in tokens:
                if tok.id.role is not role:
                    raise CatalogError(f"token {tok.id} listed under {role.value}")
                if tok.id in by_id:
                    raise CatalogError(f"duplicate token id {tok.id}")
                if tok.trick.side is not role:
                    raise CatalogError(f"token {tok.id} carries a {tok.trick.side.value} trick")
                by_id[tok.id] = tok
            indices = {tok.id.index for tok in tokens}
            if indices != set(range(1, TOKENS_PER_ROLE + 1)):
                missing = sorted(set(range(1, TOKENS_PER_ROLE + 1)) - indices)
                raise CatalogError(f"missing {role.value} token index {missing[0]}")
            for tok in tokens:
                key = (role, tok.label.casefold())
                if key in by_name:
                    raise CatalogError(
                        f"{role.value} label {tok.label!r} used by both "
                        f"{by_name[key]} and {tok.id}"
                    )
                by_name[key] = tok.id
            for tok in tokens:
                for alias in tok.aliases:
                    key = (role, alias.casefold())
                    owner = by_name.get(key)
                    if owner is not None and owner != tok.id:
                        raise CatalogError(
                            f"alias {alias!r} maps to both {owner} and {tok.id}"
                        )
                    by_name[key] = tok.id
        object.__setattr__(self, "_by_id", by_id)
        object.__setattr__(self, "_by_name", by_name)

    def tokens(self, role: Role) -> tuple[TokenDef, ...]:
        return self.attacker_tokens if role is Role.ATTACKER else self.defender_tokens

    def token(self, token_id: TokenId) -> TokenDef:
        return self._by_id[token_id]

    def resolve(self, role: Role, name: str) -> TokenId:
        """Case-insensitive lookup over labels, aliases, and canonical ids."""
        token_id = self._by_name.get((role, name.strip().casefold()))
        if token_id is not None:
            return token_id
        try:
            token_id = TokenId.parse(name)
        except CatalogError:
            raise CatalogError(f"unknown {role.value} token name {name!r}") from None
        if token_id.role is not role:
            raise CatalogError(f"token {token_id} is not a {role.value} token")
        return token_id

    def to_dict(self) -> dict:
        def token_record(tok: TokenDef) -> dict:
            return {
                "id": str(tok.id),
                "label": tok.label,
                "definition": tok.definition,
                "trick": tok.trick.name,
                "aliases": list(tok.aliases),
            }

        return {
            "attacker_tokens": [token_record(t) for t in self.attacker_tokens],
            "defender_tokens": [token_record(t) for t in self.defender_tokens],
            "matchups": [
                {
                    "attacker": self.token(e.attacker).label,
                    "defender": self.token(e.defender).label,
                    "winner": e.winner.value,
                    "comment": e.comment,
                }
                for e in self.matchups
            ],
        }


def _canonical_trick(raw: str, side: Role, owner: str) -> str:
    folded = raw.strip().casefold()
    folded = _TRICK_SPELLINGS.get(folded, folded).casefold()
    valid = ATTACKER_TRICKS if side is Role.ATTACKER else DEFENDER_TRICKS
    for name in valid:
        if name.casefold() == folded:
            return name
    raise CatalogError(f"unknown trick tag {raw!r} on token {owner}")


def _parse_tokens(records: list, role: Role) -> tuple[TokenDef, ...]:
    tokens = []
    for rec in records:
        try:
            token_id = TokenId.parse(rec["id"])
        except (KeyError, TypeError):
            raise CatalogError(f"token record missing id: {rec!r}") from None
        if token_id.role is not role:
            raise CatalogError(f"token {token_id} listed under {role.value}")
        trick = TrickTag(_canonical_trick(rec.get("trick", ""), role, str(token_id)), role)
        tokens.append(TokenDef(
            id=token_id,
            label=str(rec["label"]),
            definition=str(rec.get("definition", "")),
            trick=trick,
            aliases=tuple(str(a) for a in rec.get("aliases", ())),
        ))
    return tuple(tokens)


def load_catalog(source: Mapping | str | Path) -> Catalog:
    """Parse and validate a catalog document.

    ``source`` is either an already-parsed mapping or a path to a JSON file.
    Raises :class:`CatalogError` naming the offending record on any
    validation failure.
    """
    if isinstance(source, (str, Path)):
        try:
            data = json.loads(Path(source).read_text())
        except FileNotFoundError:
            raise CatalogError(f"catalog file not found: {source}") from None
        except json.JSONDecodeError as exc:
            raise CatalogError(f"catalog file {source} is not valid JSON: {exc}") from None
    else:
        data = source
    for key in ("attacker_tokens", "defender_tokens"):
        if key not in data:
            raise CatalogError(f"catalog document missing {key!r}")
    attackers = _parse_tokens(data["attacker_tokens"], Role.ATTACKER)
    defenders = _parse_tokens(data["defender_tokens"], Role.DEFENDER)
    # Token validation (counts, labels, aliases) happens in Catalog; matchup
    # names are resolved against that validated token set afterwards.
    catalog = Catalog(attackers, defenders, MatchupMatrix(()))
    entries = []
    for rec in data.get("matchups", ()):
        winner_text = str(rec.get("winner", "")).casefold()
        if winner_text not in (Role.ATTACKER.value, Role.DEFENDER.value):
            raise CatalogError(f"matchup winner must be attacker or defender: {rec!r}")
        entries.append(MatchupEntry(
            attacker=catalog.resolve(Role.ATTACKER, str(rec["attacker"])),
            defender=catalog.resolve(Role.DEFENDER, str(rec["defender"])),
            winner=Role(winner_text),
            comment=str(rec.get("comment", "")),
        ))
    return Catalog(attackers, defenders, MatchupMatrix(tuple(entries)))


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    """The shipped catalog reproducing the published token and verdict tables."""
    text = resources.files("breachboard.data").joinpath("default_catalog.json").read_text()
    return load_catalog(json.loads(text))


def resolve_token_name(catalog: Catalog, role: Role, name: str) -> TokenId:
    return catalog.resolve(role, name)


def seeded_matchup_matrix(catalog: Catalog) -> MatchupMatrix:
    """The matchup verdicts shipped with (or loaded into) the catalog."""
    return catalog.matchups
