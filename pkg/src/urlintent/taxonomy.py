"""The URL-sharing intent taxonomy, loaded from data files.

The shipped ``data/taxonomy.yaml`` is the single source of truth; nothing in
the code hard-codes class names. Loading validates the structural invariants
(six categories, 26 classes, fixed per-category counts) so a corrupted file
fails loudly instead of silently shifting label semantics.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

import yaml

from .errors import ParseError, UnknownLabel, UnknownSourceLabel, ValidationError

CATEGORY_IDS = ("Share", "Entertain", "Offer", "Converse", "Promote", "Request")
EXPECTED_CLASS_COUNTS = {
    "Share": 8,
    "Entertain": 2,
    "Offer": 4,
    "Converse": 4,
    "Promote": 4,
    "Request": 4,
}
PRIOR_SOURCES = ("Alhadi2011", "GomezAdorno2014", "Java2007")
UNCERTAIN = "uncertain"


@dataclass(frozen=True)
class IntentClass:
    id: str
    name: str
    illustrative_example: str
    parent: str


@dataclass(frozen=True)
class IntentCategory:
    id: str
    name: str
    definition: str
    classes: tuple[IntentClass, ...]

    @property
    def display(self) -> str:
        """Full display string, e.g. ``Information Sharing (Share)``."""
        return f"{self.name} ({self.id})"


@dataclass(frozen=True, order=True)
class IntentLabel:
    """A resolved label: a category, a fine-grained class, or Uncertain.

    ``id`` is the category id for ``kind="category"``, the class slug for
    ``kind="class"`` and ``None`` for Uncertain.
    """

    kind: str
    id: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("category", "class", UNCERTAIN):
            raise ValueError(f"bad label kind {self.kind!r}")
        if (self.kind == UNCERTAIN) != (self.id is None):
            raise ValueError("Uncertain labels carry no id; others require one")

    @classmethod
    def category(cls, cat_id: str) -> IntentLabel:
        return cls("category", cat_id)

    @classmethod
    def klass(cls, class_id: str) -> IntentLabel:
        return cls("class", class_id)

    @property
    def is_uncertain(self) -> bool:
        return self.kind == UNCERTAIN

    @property
    def key(self) -> str:
        """Short stable string used in files and tables."""
        return "Uncertain" if self.id is None else self.id

    def __str__(self) -> str:
        return self.key


UNCERTAIN_LABEL = IntentLabel(UNCERTAIN)


@dataclass(frozen=True)
class PriorMapping:
    source: str
    source_label: str
    target_category: str


def _norm(text: str) -> str:
    return re.sub(r"\s+", " ", text).strip().casefold()


@dataclass(frozen=True)
class Taxonomy:
    version: str
    categories: tuple[IntentCategory, ...]
    mappings: tuple[PriorMapping, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        # lookup tables; frozen dataclass so go through object.__setattr__
        cats = {c.id: c for c in self.categories}
        classes = {k.id: k for c in self.categories for k in c.classes}
        names: dict[str, IntentLabel] = {}
        for c in self.categories:
            for text in (c.id, c.name, c.display):
                names[_norm(text)] = IntentLabel.category(c.id)
            for k in c.classes:
                for text in (k.id, k.name):
                    names[_norm(text)] = IntentLabel.klass(k.id)
        object.__setattr__(self, "_cats", cats)
        object.__setattr__(self, "_classes", classes)
        object.__setattr__(self, "_names", names)

    @property
    def classes(self) -> tuple[IntentClass, ...]:
        return tuple(k for c in self.categories for k in c.classes)

    def get_category(self, cat_id: str) -> IntentCategory:
        try:
            return self._cats[cat_id]
        except KeyError:
            raise UnknownLabel(f"unknown category {cat_id!r}") from None

    def get_class(self, class_id: str) -> IntentClass:
        try:
            return self._classes[class_id]
        except KeyError:
            raise UnknownLabel(f"unknown class {class_id!r}") from None

    def check(self, label: IntentLabel) -> IntentLabel:
        """Raise UnknownLabel unless ``label`` resolves against this taxonomy."""
        if label.kind == "category":
            self.get_category(label.id)
        elif label.kind == "class":
            self.get_class(label.id)
        return label

    def category_of(self, label: IntentLabel) -> str | None:
        """Top-level category id of a label; None for Uncertain."""
        if label.kind == "category":
            return self.get_category(label.id).id
        if label.kind == "class":
            return self.get_class(label.id).parent
        return None

    def display(self, label: IntentLabel) -> str:
        """Human-readable text of a label, used for query/document augmentation."""
        if label.kind == "category":
            return self.get_category(label.id).display
        if label.kind == "class":
            k = self.get_class(label.id)
            return f"{self.get_category(k.parent).display} {k.name}"
        return ""

    def resolve_label(self, text: str) -> IntentLabel:
        return resolve_label(self, text)

    def map_prior(self, source: str, source_label: str) -> list[str]:
        return map_prior(self, source, source_label)

    def with_mappings(self, rows: Iterable[PriorMapping]) -> Taxonomy:
        rows = tuple(rows)
        for row in rows:
            if row.source not in PRIOR_SOURCES:
                raise ValidationError(f"unknown prior taxonomy {row.source!r}")
            if row.target_category not in self._cats:
                raise ValidationError(
                    f"mapping {row.source}/{row.source_label!r} targets unknown "
                    f"category {row.target_category!r}"
                )
        seen = set()
        for row in rows:
            key = (row.source, _norm(row.source_label), row.target_category)
            if key in seen:
                raise ValidationError(f"duplicate mapping row {key}")
            seen.add(key)
        return Taxonomy(self.version, self.categories, rows)

    def to_dict(self) -> dict:
        return {
            "version": self.version,
            "categories": [
                {
                    "id": c.id,
                    "name": c.name,
                    "definition": c.definition,
                    "classes": [
                        {"id": k.id, "name": k.name, "example": k.illustrative_example}
                        for k in c.classes
                    ],
                }
                for c in self.categories
            ],
        }


def resolve_label(taxonomy: Taxonomy, text: str) -> IntentLabel:
    """Resolve free text to a label by case-insensitive exact match.

    Matches category ids, category names, class slugs and class names;
    ``"uncertain"`` resolves to the Uncertain label.
    """
    key = _norm(text)
    if key == UNCERTAIN:
        return UNCERTAIN_LABEL
    try:
        return taxonomy._names[key]
    except KeyError:
        raise UnknownLabel(f"unknown intent label {text!r}") from None


def map_prior(taxonomy: Taxonomy, source: str, source_label: str) -> list[str]:
    """Categories that a label from a prior taxonomy maps to, in table order."""
    src = _norm(source)
    lab = _norm(source_label)
    out = [
        m.target_category
        for m in taxonomy.mappings
        if _norm(m.source) == src and _norm(m.source_label) == lab
    ]
    if not out:
        raise UnknownSourceLabel(f"no mapping for {source!r} label {source_label!r}")
    return out


def _require(obj: dict, key: str, where: str):
    if not isinstance(obj, dict) or key not in obj:
        raise ValidationError(f"{where}: missing key {key!r}")
    value = obj[key]
    if not isinstance(value, str) or not value.strip():
        raise ValidationError(f"{where}: {key!r} must be a non-empty string")
    return value.strip()


def taxonomy_from_dict(doc: object) -> Taxonomy:
    if not isinstance(doc, dict) or "categories" not in doc:
        raise ParseError("taxonomy document must be a mapping with 'categories'")
    raw_cats = doc["categories"]
    if not isinstance(raw_cats, list):
        raise ValidationError("'categories' must be a list")

    categories = []
    class_ids: set[str] = set()
    for i, rc in enumerate(raw_cats):
        cid = _require(rc, "id", f"category #{i}")
        if cid not in CATEGORY_IDS:
            raise ValidationError(f"category id {cid!r} not in {CATEGORY_IDS}")
        if any(c.id == cid for c in categories):
            raise ValidationError(f"duplicate category id {cid!r}")
        raw_classes = rc.get("classes")
        if not isinstance(raw_classes, list):
            raise ValidationError(f"category {cid}: 'classes' must be a list")
        classes = []
        for j, rk in enumerate(raw_classes):
            where = f"{cid} class #{j}"
            kid = _require(rk, "id", where)
            if kid in class_ids:
                raise ValidationError(f"duplicate class id {kid!r}")
            class_ids.add(kid)
            parent = rk.get("parent", cid)
            if parent != cid:
                raise ValidationError(f"class {kid!r} names parent {parent!r} but sits under {cid!r}")
            classes.append(
                IntentClass(kid, _require(rk, "name", where), str(rk.get("example", "")).strip(), cid)
            )
        categories.append(
            IntentCategory(cid, _require(rc, "name", cid), _require(rc, "definition", cid), tuple(classes))
        )

    if len(categories) != len(CATEGORY_IDS):
        missing = sorted(set(CATEGORY_IDS) - {c.id for c in categories})
        raise ValidationError(f"expected 6 categories, found {len(categories)} (missing {missing})")
    for c in categories:
        want = EXPECTED_CLASS_COUNTS[c.id]
        if len(c.classes) != want:
            raise ValidationError(f"category {c.id} has {len(c.classes)} classes, expected {want}")

    tax = Taxonomy(str(doc.get("version", "0")), tuple(categories))
    names = [_norm(k.name) for k in tax.classes] + [_norm(c.name) for c in categories]
    if len(set(names)) != len(names):
        raise ValidationError("category/class display names must be unique")
    return tax


def load_taxonomy(path: str | Path, mappings: str | Path | None = None) -> Taxonomy:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"not UTF-8: {exc}", str(path)) from exc
    if not text.strip():
        raise ParseError("empty taxonomy file", str(path))
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ParseError(f"malformed taxonomy: {exc}", str(path)) from exc
    try:
        tax = taxonomy_from_dict(doc)
    except ParseError as exc:
        raise ParseError(str(exc), str(path)) from exc
    if mappings is not None:
        tax = tax.with_mappings(load_mappings(mappings))
    return tax


def load_mappings(path: str | Path) -> list[PriorMapping]:
    path = Path(path)
    rows = []
    with path.open(encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh, delimiter="\t")
        header = next(reader, None)
        if header != ["source", "source_label", "target_category"]:
            raise ParseError(f"bad mapping header {header}", str(path), 1)
        for lineno, rec in enumerate(reader, start=2):
            if not rec or not "".join(rec).strip():
                continue
            if len(rec) != 3:
                raise ParseError(f"expected 3 columns, got {len(rec)}", str(path), lineno)
            rows.append(PriorMapping(*(r.strip() for r in rec)))
    return rows


def dump_taxonomy(taxonomy: Taxonomy, path: str | Path) -> None:
    text = yaml.safe_dump(taxonomy.to_dict(), sort_keys=False, allow_unicode=True)
    Path(path).write_text(text, encoding="utf-8")


def dump_mappings(taxonomy: Taxonomy, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(["source", "source_label", "target_category"])
        for m in taxonomy.mappings:
            w.writerow([m.source, m.source_label, m.target_category])


def shipped_taxonomy_path() -> Path:
    return Path(str(resources.files("urlintent") / "data" / "taxonomy.yaml"))


def shipped_mappings_path() -> Path:
    return Path(str(resources.files("urlintent") / "data" / "prior_mappings.tsv"))


def default_taxonomy() -> Taxonomy:
    """The shipped taxonomy with its prior-taxonomy mapping table."""
    return load_taxonomy(shipped_taxonomy_path(), shipped_mappings_path())
