"""Rule-based restriction extraction from document text.

The pipeline splits text into sentences, flags sentences that contain a
prohibition cue, classifies them (unconditional prohibition vs. a
requirement that only applies under conditions), and pulls dated validity
periods out of the sentence with a small regex grammar.

All cues, topic keywords, and month names live in a JSON rule table so new
restriction topics are data additions. German entries come first; English
works through the same tables.
"""

from __future__ import annotations

import calendar
import json
import re
from dataclasses import dataclass, field
from datetime import date
from enum import Enum
from importlib import resources
from pathlib import Path

# day caps per month for year-free recurring periods; Feb admits the leap day
RECURRING_DAY_CAP = (31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)


class ExtractionError(ValueError):
    pass


class RestrictionKind(str, Enum):
    PROHIBITION = "Prohibition"
    REQUIREMENT = "Requirement"


class ExtentForm(str, Enum):
    ABSOLUTE = "absolute"
    RECURRING = "recurring"
    UNDATED = "undated"


@dataclass(frozen=True)
class Sentence:
    text: str
    doc_id: str
    index: int

    def __post_init__(self):
        if not self.text.strip():
            raise ExtractionError("sentence text must be non-empty")


@dataclass(frozen=True)
class TemporalExtent:
    """Validity period of a restriction.

    Either an absolute day interval, an annually recurring month/day
    interval (no year), or undated when the sentence names no period.
    """

    form: ExtentForm
    start: date | None = None
    end: date | None = None
    recur_start_month: int | None = None
    recur_start_day: int | None = None
    recur_end_month: int | None = None
    recur_end_day: int | None = None

    def __post_init__(self):
        if self.form is ExtentForm.ABSOLUTE:
            if self.start is None or self.end is None:
                raise ExtractionError("absolute extent needs start and end")
            if self.start > self.end:
                raise ExtractionError(f"absolute extent reversed: {self.start} > {self.end}")
        elif self.form is ExtentForm.RECURRING:
            for m, d in (
                (self.recur_start_month, self.recur_start_day),
                (self.recur_end_month, self.recur_end_day),
            ):
                if m is None or d is None:
                    raise ExtractionError("recurring extent needs all four calendar fields")
                if not 1 <= m <= 12:
                    raise ExtractionError(f"month {m} out of range")
                if not 1 <= d <= RECURRING_DAY_CAP[m - 1]:
                    raise ExtractionError(f"day {d} invalid for month {m}")
            if self.start is not None or self.end is not None:
                raise ExtractionError("recurring extent carries no absolute dates")
        else:
            if any(
                v is not None
                for v in (
                    self.start,
                    self.end,
                    self.recur_start_month,
                    self.recur_start_day,
                    self.recur_end_month,
                    self.recur_end_day,
                )
            ):
                raise ExtractionError("undated extent carries no other fields")

    @staticmethod
    def absolute(start: date, end: date) -> "TemporalExtent":
        return TemporalExtent(form=ExtentForm.ABSOLUTE, start=start, end=end)

    @staticmethod
    def recurring(sm: int, sd: int, em: int, ed: int) -> "TemporalExtent":
        return TemporalExtent(
            form=ExtentForm.RECURRING,
            recur_start_month=sm,
            recur_start_day=sd,
            recur_end_month=em,
            recur_end_day=ed,
        )

    @staticmethod
    def undated() -> "TemporalExtent":
        return TemporalExtent(form=ExtentForm.UNDATED)

    def to_json(self) -> dict:
        if self.form is ExtentForm.ABSOLUTE:
            return {
                "form": "absolute",
                "start": self.start.isoformat(),
                "end": self.end.isoformat(),
            }
        if self.form is ExtentForm.RECURRING:
            return {
                "form": "recurring",
                "startMonth": self.recur_start_month,
                "startDay": self.recur_start_day,
                "endMonth": self.recur_end_month,
                "endDay": self.recur_end_day,
            }
        return {"form": "undated"}

    @staticmethod
    def from_json(obj: dict) -> "TemporalExtent":
        form = obj.get("form")
        if form == "absolute":
            return TemporalExtent.absolute(
                date.fromisoformat(obj["start"]), date.fromisoformat(obj["end"])
            )
        if form == "recurring":
            return TemporalExtent.recurring(
                int(obj["startMonth"]),
                int(obj["startDay"]),
                int(obj["endMonth"]),
                int(obj["endDay"]),
            )
        if form == "undated":
            return TemporalExtent.undated()
        raise ExtractionError(f"unknown extent form: {form!r}")


@dataclass(frozen=True)
class RestrictionClassification:
    kind: RestrictionKind
    topic: str


@dataclass(frozen=True)
class RestrictionRef:
    doc_id: str
    sentence: Sentence
    classification: RestrictionClassification
    extent: TemporalExtent
    # set once the ref is stored; lets API clients address the graph edge
    ref_id: str | None = None

    def to_json(self) -> dict:
        out = {
            "docId": self.doc_id,
            "sentenceIndex": self.sentence.index,
            "sentence": self.sentence.text,
            "kind": self.classification.kind.value,
            "topic": self.classification.topic,
            "extent": self.extent.to_json(),
        }
        if self.ref_id is not None:
            out["refId"] = self.ref_id
        return out

    @staticmethod
    def from_json(obj: dict) -> "RestrictionRef":
        sentence = Sentence(
            text=obj["sentence"], doc_id=obj["docId"], index=int(obj["sentenceIndex"])
        )
        return RestrictionRef(
            doc_id=obj["docId"],
            sentence=sentence,
            classification=RestrictionClassification(
                kind=RestrictionKind(obj["kind"]), topic=obj["topic"]
            ),
            extent=TemporalExtent.from_json(obj["extent"]),
            ref_id=obj.get("refId"),
        )


# ---------------------------------------------------------------------------
# rule table


class RuleTable:
    """Cue words, topic keywords, month names, and split-protected
    abbreviations, loaded from JSON."""

    def __init__(self, obj: dict):
        try:
            self.prohibition_cues = tuple(obj["prohibitionCues"])
            self.condition_cues = tuple(obj["conditionCues"])
            self.topics = {name: tuple(kws) for name, kws in obj["topics"].items()}
            self.months = {name.lower(): int(num) for name, num in obj["months"].items()}
        except (KeyError, TypeError) as exc:
            raise ExtractionError(f"malformed rule table: {exc}") from exc
        self.abbreviations = tuple(obj.get("abbreviations", ()))
        for num in self.months.values():
            if not 1 <= num <= 12:
                raise ExtractionError(f"month number {num} out of range in rule table")

        self._prohibition_re = _cue_pattern(self.prohibition_cues)
        self._condition_re = _cue_pattern(self.condition_cues)
        # topic keywords match at word start so German compounds still hit
        self._topic_res = {
            name: re.compile(
                "|".join(r"\b" + re.escape(k) for k in kws), re.IGNORECASE
            )
            for name, kws in self.topics.items()
        }
        self._grammar = _TemporalGrammar(self.months)

    @staticmethod
    def load(path: str | Path | None = None) -> "RuleTable":
        if path is None:
            text = resources.files("georestrict").joinpath("data/rules.json").read_text("utf-8")
        else:
            text = Path(path).read_text("utf-8")
        return RuleTable(json.loads(text))

    def registry(self) -> list[str]:
        """All known restriction classes, including the fallback."""
        return list(self.topics) + ["General"]


def _cue_pattern(cues) -> re.Pattern:
    parts = sorted(cues, key=len, reverse=True)
    return re.compile("|".join(r"\b" + re.escape(c) + r"\b" for c in parts), re.IGNORECASE)


_DEFAULT_RULES: RuleTable | None = None


def default_rules() -> RuleTable:
    global _DEFAULT_RULES
    if _DEFAULT_RULES is None:
        _DEFAULT_RULES = RuleTable.load()
    return _DEFAULT_RULES


# ---------------------------------------------------------------------------
# sentence splitting


_ORDINAL_DATE_TAIL = re.compile(r"(?<!\d)\d{1,2}\.\d{1,2}\.$")


def split_sentences(text: str, doc_id: str = "", rules: RuleTable | None = None) -> list[Sentence]:
    """Deterministic sentence segmentation.

    A '.', '!' or '?' ends a sentence when followed by whitespace and an
    uppercase letter, or by end of text. Dots that terminate a known
    abbreviation or a day.month ordinal ("01.03.") never split.
    """
    rules = rules or default_rules()
    sentences: list[Sentence] = []
    start = 0
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in ".!?":
            if _splits_here(text, i, rules):
                chunk = text[start : i + 1].strip()
                if chunk:
                    sentences.append(Sentence(text=chunk, doc_id=doc_id, index=len(sentences)))
                start = i + 1
        i += 1
    tail = text[start:].strip()
    if tail:
        sentences.append(Sentence(text=tail, doc_id=doc_id, index=len(sentences)))
    return sentences


def _splits_here(text: str, i: int, rules: RuleTable) -> bool:
    follow = text[i + 1 :]
    at_end = follow.strip() == ""
    follows_upper = bool(re.match(r"\s+\S", follow)) and follow.lstrip()[0].isupper()
    if not (at_end or follows_upper):
        return False
    if text[i] != ".":
        return True
    head = text[: i + 1]
    for abbr in rules.abbreviations:
        if head.lower().endswith(abbr.lower()):
            return False
    if _ORDINAL_DATE_TAIL.search(head):
        return False
    return True


# ---------------------------------------------------------------------------
# classification


def classify(s: Sentence, rules: RuleTable | None = None) -> RestrictionClassification | None:
    """None when no prohibition cue matches; otherwise kind and topic."""
    rules = rules or default_rules()
    if not rules._prohibition_re.search(s.text):
        return None
    has_condition = bool(rules._condition_re.search(s.text))
    if not has_condition:
        extents, _ = extract_temporal_with_warnings(s, rules)
        has_condition = bool(extents)
    kind = RestrictionKind.REQUIREMENT if has_condition else RestrictionKind.PROHIBITION
    topic = "General"
    for name, pattern in rules._topic_res.items():
        if pattern.search(s.text):
            topic = name
            break
    return RestrictionClassification(kind=kind, topic=topic)


# ---------------------------------------------------------------------------
# temporal grammar


@dataclass
class _Candidate:
    start: int
    end: int
    priority: int
    extent: TemporalExtent


class _TemporalGrammar:
    """The five rule families, resolved leftmost-longest.

    Priority when spans tie exactly: range > full date > month+year >
    year phrase > day.month pair.
    """

    def __init__(self, months: dict[str, int]):
        self.months = months
        month_alt = "|".join(
            re.escape(m) for m in sorted(months, key=len, reverse=True)
        )
        self.full_date = re.compile(r"(?<!\d)(\d{1,2})\.(\d{1,2})\.(\d{4})(?!\d)")
        self.day_month = re.compile(r"(?<!\d)(\d{1,2})\.(\d{1,2})\.(?!\d)")
        self.month_year = re.compile(
            rf"\b({month_alt})\s+(\d{{4}})(?!\d)", re.IGNORECASE
        )
        self.year_phrase = re.compile(r"\b(?:jahr(?:es)?|year)\s+(\d{4})(?!\d)", re.IGNORECASE)
        atom = (
            rf"(?:(?<!\d)\d{{1,2}}\.\d{{1,2}}\.\d{{4}}(?!\d)"
            rf"|(?<!\d)\d{{1,2}}\.\d{{1,2}}\.(?!\d)"
            rf"|(?:{month_alt})\s+\d{{4}}(?!\d)"
            rf"|(?:jahr(?:es)?|year)\s+\d{{4}}(?!\d)"
            rf"|(?:{month_alt})\b)"
        )
        sep = r"\s*(?:\bbis\s+zum\b|\bbis\s+einschließlich\b|\bbis\b|\bto\b|[-–—])\s*"
        self.range = re.compile(rf"({atom}){sep}({atom})", re.IGNORECASE)

    def parse_atom(self, text: str) -> dict | None:
        m = self.full_date.fullmatch(text)
        if m:
            return {"kind": "date", "day": int(m[1]), "month": int(m[2]), "year": int(m[3])}
        m = self.day_month.fullmatch(text)
        if m:
            return {"kind": "daymonth", "day": int(m[1]), "month": int(m[2])}
        m = self.month_year.fullmatch(text)
        if m:
            return {"kind": "monthyear", "month": self.months[m[1].lower()], "year": int(m[2])}
        m = self.year_phrase.fullmatch(text)
        if m:
            return {"kind": "year", "year": int(m[1])}
        key = text.lower().strip()
        if key in self.months:
            return {"kind": "month", "month": self.months[key]}
        return None


def extract_temporal(s: Sentence | str, rules: RuleTable | None = None) -> list[TemporalExtent]:
    extents, _ = extract_temporal_with_warnings(s, rules)
    return extents


def extract_temporal_with_warnings(
    s: Sentence | str, rules: RuleTable | None = None
) -> tuple[list[TemporalExtent], list[str]]:
    """Extents found in one sentence plus parse warnings (skipped
    impossible dates and the like)."""
    rules = rules or default_rules()
    text = s.text if isinstance(s, Sentence) else s
    g = rules._grammar
    warnings: list[str] = []
    candidates: list[_Candidate] = []

    for m in g.range.finditer(text):
        extent = _build_range_extent(g, m[1], m[2], warnings)
        if extent is not None:
            candidates.append(_Candidate(m.start(), m.end(), 1, extent))
    for m in g.full_date.finditer(text):
        d = _safe_absolute_day(int(m[3]), int(m[2]), int(m[1]), warnings, m[0])
        if d is not None:
            candidates.append(_Candidate(m.start(), m.end(), 2, TemporalExtent.absolute(d, d)))
    for m in g.month_year.finditer(text):
        month = rules.months[m[1].lower()]
        year = int(m[2])
        last = calendar.monthrange(year, month)[1]
        candidates.append(
            _Candidate(
                m.start(),
                m.end(),
                3,
                TemporalExtent.absolute(date(year, month, 1), date(year, month, last)),
            )
        )
    for m in g.year_phrase.finditer(text):
        year = int(m[1])
        candidates.append(
            _Candidate(
                m.start(),
                m.end(),
                4,
                TemporalExtent.absolute(date(year, 1, 1), date(year, 12, 31)),
            )
        )
    # day.month atoms ("01.03.") only carry meaning inside a range pair;
    # standalone they would false-positive on section numbering
    candidates.sort(key=lambda c: (c.start, -(c.end - c.start), c.priority))
    chosen: list[_Candidate] = []
    for c in candidates:
        if all(c.end <= o.start or c.start >= o.end for o in chosen):
            chosen.append(c)
    chosen.sort(key=lambda c: c.start)
    return [c.extent for c in chosen], warnings


def _valid_recurring(month: int, day: int) -> bool:
    return 1 <= month <= 12 and 1 <= day <= RECURRING_DAY_CAP[month - 1]


def _safe_absolute_day(year, month, day, warnings, raw) -> date | None:
    try:
        return date(year, month, day)
    except ValueError:
        warnings.append(f"impossible calendar date skipped: {raw!r}")
        return None


def _build_range_extent(grammar, left_text, right_text, warnings) -> TemporalExtent | None:
    a = grammar.parse_atom(left_text.strip())
    b = grammar.parse_atom(right_text.strip())
    if a is None or b is None:
        return None
    if "year" not in a and "year" not in b:
        # year-free on both sides: an annually recurring period
        sm = a.get("month")
        sd = a.get("day", 1)
        em = b.get("month")
        ed = b.get("day", RECURRING_DAY_CAP[b["month"] - 1] if "month" in b else None)
        if sm is None or em is None:
            return None
        if not (_valid_recurring(sm, sd) and _valid_recurring(em, ed)):
            warnings.append(
                f"impossible calendar day skipped: {left_text!r}..{right_text!r}"
            )
            return None
        return TemporalExtent.recurring(sm, sd, em, ed)

    start = _range_bound(a, b, warnings, left_text, is_start=True)
    end = _range_bound(b, a, warnings, right_text, is_start=False)
    if start is None or end is None:
        return None
    if end < start and _year_was_borrowed(a, b):
        # "15.11.2021 bis 15.02." means into the following year
        end = _shift_year(end, +1)
        if end is None:
            return None
    if end < start:
        warnings.append(f"reversed range skipped: {left_text!r}..{right_text!r}")
        return None
    return TemporalExtent.absolute(start, end)


def _year_was_borrowed(a, b) -> bool:
    return ("year" in a) != ("year" in b)


def _shift_year(d: date, delta: int) -> date | None:
    try:
        return d.replace(year=d.year + delta)
    except ValueError:  # Feb 29
        return d.replace(year=d.year + delta, day=28)


def _range_bound(atom, other, warnings, raw, is_start: bool) -> date | None:
    year = atom.get("year", other.get("year"))
    if year is None:
        return None
    kind = atom["kind"]
    if kind == "date" or kind == "daymonth":
        return _safe_absolute_day(year, atom["month"], atom["day"], warnings, raw)
    if kind == "monthyear" or kind == "month":
        month = atom["month"]
        if is_start:
            return date(year, month, 1)
        return date(year, month, calendar.monthrange(year, month)[1])
    if kind == "year":
        return date(year, 1, 1) if is_start else date(year, 12, 31)
    return None


# ---------------------------------------------------------------------------
# document pipeline


@dataclass
class ExtractionResult:
    refs: list[RestrictionRef] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


def extract_document(
    doc_id: str, text: str, rules: RuleTable | None = None
) -> ExtractionResult:
    """split -> classify -> extract dates; sentences with a classification
    but no dated match yield one undated ref."""
    rules = rules or default_rules()
    result = ExtractionResult()
    for sentence in split_sentences(text, doc_id=doc_id, rules=rules):
        cls = classify(sentence, rules)
        if cls is None:
            continue
        extents, warnings = extract_temporal_with_warnings(sentence, rules)
        result.warnings += [f"{doc_id}[{sentence.index}]: {w}" for w in warnings]
        if not extents:
            extents = [TemporalExtent.undated()]
        for extent in extents:
            result.refs.append(
                RestrictionRef(
                    doc_id=doc_id, sentence=sentence, classification=cls, extent=extent
                )
            )
    return result
