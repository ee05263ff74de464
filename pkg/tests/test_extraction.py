from __future__ import annotations

from datetime import date

import pytest
from hypothesis import given, settings, strategies as st

from georestrict.extraction import (
    ExtentForm,
    ExtractionError,
    RestrictionKind,
    RuleTable,
    Sentence,
    TemporalExtent,
    classify,
    default_rules,
    extract_document,
    extract_temporal,
    extract_temporal_with_warnings,
    split_sentences,
)


def sent(text: str, index: int = 0) -> Sentence:
    return Sentence(text=text, doc_id="doc", index=index)


# ---------------------------------------------------------------------------
# sentence splitting


def test_split_two_plain_sentences():
    got = split_sentences("Satz eins. Satz zwei.")
    assert [s.text for s in got] == ["Satz eins.", "Satz zwei."]
    assert [s.index for s in got] == [0, 1]


def test_split_protects_ordinal_dates():
    got = split_sentences("Brutzeit vom 01.03. bis 30.09. ist zu beachten.")
    assert len(got) == 1


def test_split_protects_date_before_uppercase():
    got = split_sentences("Die Frist endet am 30.09. Danach ist alles frei.")
    assert len(got) == 1


def test_split_empty_text():
    assert split_sentences("") == []
    assert split_sentences("   \n  ") == []


def test_split_protects_abbreviations():
    got = split_sentences("Schutz gilt z.B. Vögeln und bzw. Nr. 4 der Auflagen. Zweiter Satz.")
    assert len(got) == 2
    assert got[1].text == "Zweiter Satz."


def test_split_full_date_sentence_end_still_splits():
    got = split_sentences("Die Sperrung gilt ab dem 04.03.2022. Neue Regel folgt.")
    assert [s.text for s in got] == [
        "Die Sperrung gilt ab dem 04.03.2022.",
        "Neue Regel folgt.",
    ]


def test_split_question_and_exclamation():
    got = split_sentences("Ist das erlaubt? Nein! Betreten verboten.")
    assert [s.text for s in got] == ["Ist das erlaubt?", "Nein!", "Betreten verboten."]


def test_split_without_trailing_punctuation():
    got = split_sentences("Erster Satz. Zweiter ohne Punkt")
    assert [s.text for s in got] == ["Erster Satz.", "Zweiter ohne Punkt"]


# ---------------------------------------------------------------------------
# classification


def test_classify_general_prohibition():
    got = classify(sent("Das Betreten ist verboten."))
    assert got is not None
    assert got.kind is RestrictionKind.PROHIBITION
    assert got.topic == "General"


def test_classify_breeding_requirement():
    got = classify(sent("Während der Brutzeit sind laute Arbeiten nicht zulässig."))
    assert got is not None
    assert got.kind is RestrictionKind.REQUIREMENT
    assert got.topic == "Breeding Times"


def test_classify_no_cue_returns_none():
    assert classify(sent("Die Aussicht ist schön.")) is None


def test_classify_temporal_expression_counts_as_condition():
    got = classify(sent("Vom 01.03. bis 30.09. ist das Befahren untersagt."))
    assert got is not None
    assert got.kind is RestrictionKind.REQUIREMENT


def test_classify_english_cues():
    got = classify(sent("The reserve may not be entered or damaged."))
    assert got is not None
    assert got.kind is RestrictionKind.PROHIBITION
    got = classify(sent("Heavy machinery is not permitted during the nesting season."))
    assert got is not None
    assert got.kind is RestrictionKind.REQUIREMENT
    assert got.topic == "Breeding Times"


def test_classify_word_boundaries_avoid_substring_hits():
    # "nur" inside another word must not make a Requirement
    got = classify(sent("Die Natursteinmauer betreten ist verboten."))
    assert got is not None
    assert got.kind is RestrictionKind.PROHIBITION


def test_classify_topic_prefix_matches_compounds():
    got = classify(sent("In Brutzeiten ist der Einsatz schwerer Geräte untersagt."))
    assert got is not None
    assert got.topic == "Breeding Times"


# ---------------------------------------------------------------------------
# temporal grammar: paper-anchored single patterns


def test_full_date_single_day_interval():
    got = extract_temporal("Die Begehung fand am 04.03.2022 statt.")
    assert got == [TemporalExtent.absolute(date(2022, 3, 4), date(2022, 3, 4))]


def test_month_year_whole_month():
    got = extract_temporal("The survey was planned for February 2023 in the area.")
    assert got == [TemporalExtent.absolute(date(2023, 2, 1), date(2023, 2, 28))]


def test_german_month_year():
    got = extract_temporal("Die Maßnahme beginnt im März 2022.")
    assert got == [TemporalExtent.absolute(date(2022, 3, 1), date(2022, 3, 31))]


def test_year_phrase_whole_year():
    got = extract_temporal("Die Fläche wurde im Jahr 2021 geflutet.")
    assert got == [TemporalExtent.absolute(date(2021, 1, 1), date(2021, 12, 31))]


def test_recurring_day_month_range():
    got = extract_temporal("Die Brutzeit vom 01.03. bis 30.09. ist zu beachten.")
    assert got == [TemporalExtent.recurring(3, 1, 9, 30)]


# ---------------------------------------------------------------------------
# temporal grammar: ranges and resolution


def test_month_range_without_years_is_recurring():
    got = extract_temporal("Breeding times from March to September must be observed.")
    assert got == [TemporalExtent.recurring(3, 1, 9, 30)]


def test_month_year_range_is_one_interval():
    got = extract_temporal("Die Sperrung gilt von März 2022 bis Mai 2022.")
    assert got == [TemporalExtent.absolute(date(2022, 3, 1), date(2022, 5, 31))]


def test_full_date_range():
    got = extract_temporal("Gesperrt vom 15.11.2021 bis 28.02.2022.")
    assert got == [TemporalExtent.absolute(date(2021, 11, 15), date(2022, 2, 28))]


def test_range_borrows_year_forward():
    got = extract_temporal("Gesperrt vom 01.03. bis 30.09.2022.")
    assert got == [TemporalExtent.absolute(date(2022, 3, 1), date(2022, 9, 30))]


def test_range_borrows_year_across_boundary():
    got = extract_temporal("Gesperrt vom 15.11.2021 bis 15.02. des Folgejahres.")
    assert got == [TemporalExtent.absolute(date(2021, 11, 15), date(2022, 2, 15))]


def test_hyphen_range():
    got = extract_temporal("Bauruhe 01.06.2022 - 31.08.2022 im gesamten Gebiet.")
    assert got == [TemporalExtent.absolute(date(2022, 6, 1), date(2022, 8, 31))]


def test_impossible_date_skipped_with_warning():
    extents, warnings = extract_temporal_with_warnings(
        "Die Abnahme war am 31.02.2021 geplant."
    )
    assert extents == []
    assert len(warnings) == 1
    assert "31.02.2021" in warnings[0]


def test_impossible_recurring_day_skipped():
    extents, warnings = extract_temporal_with_warnings("Frist vom 31.04. bis 30.06. beachten.")
    assert extents == []
    assert warnings


def test_no_match_is_empty():
    assert extract_temporal("Hier steht kein Datum.") == []


def test_multiple_extents_in_one_sentence():
    got = extract_temporal("Sperrung am 04.03.2022 und erneut im Mai 2022.")
    assert got == [
        TemporalExtent.absolute(date(2022, 3, 4), date(2022, 3, 4)),
        TemporalExtent.absolute(date(2022, 5, 1), date(2022, 5, 31)),
    ]


def test_leftmost_longest_spans_never_overlap():
    texts = [
        "Sperrung vom 01.03. bis 30.09. und am 04.03.2022.",
        "März 2022 bis Mai 2022 und Jahr 2021.",
        "Vom 01.01.2020 bis 31.12.2020 oder im Jahr 2021 oder Februar 2023.",
    ]
    for text in texts:
        extents = extract_temporal(text)
        assert extents == extract_temporal(text)  # deterministic
        for e in extents:
            if e.form is ExtentForm.ABSOLUTE:
                assert e.start <= e.end


def test_range_beats_embedded_month_year():
    # without the range rule this would parse as two separate months
    got = extract_temporal("Sperrung von März 2022 bis Mai 2022.")
    assert len(got) == 1


# ---------------------------------------------------------------------------
# extent invariants


def test_absolute_extent_rejects_reversed():
    with pytest.raises(ExtractionError):
        TemporalExtent.absolute(date(2022, 5, 1), date(2022, 3, 1))


def test_recurring_extent_field_validation():
    with pytest.raises(ExtractionError):
        TemporalExtent.recurring(13, 1, 3, 1)
    with pytest.raises(ExtractionError):
        TemporalExtent.recurring(2, 30, 3, 1)
    TemporalExtent.recurring(2, 29, 3, 1)  # leap day is allowed


def test_undated_carries_nothing():
    with pytest.raises(ExtractionError):
        TemporalExtent(form=ExtentForm.UNDATED, start=date(2022, 1, 1))


def test_extent_json_round_trip():
    cases = [
        TemporalExtent.absolute(date(2022, 3, 4), date(2022, 3, 4)),
        TemporalExtent.recurring(3, 1, 9, 30),
        TemporalExtent.undated(),
    ]
    for extent in cases:
        assert TemporalExtent.from_json(extent.to_json()) == extent


@given(st.text(max_size=300))
@settings(max_examples=150, deadline=None)
def test_extract_temporal_total_and_deterministic(text):
    first = extract_temporal(text)
    second = extract_temporal(text)
    assert first == second
    for e in first:
        assert e.form in (ExtentForm.ABSOLUTE, ExtentForm.RECURRING)
        if e.form is ExtentForm.ABSOLUTE:
            assert e.start <= e.end
        else:
            assert e.recur_start_month is not None and e.start is None


# ---------------------------------------------------------------------------
# document pipeline


def test_extract_document_two_breeding_sentences():
    text = (
        "Im Schutzgebiet gelten besondere Auflagen. "
        "Während der Brutzeit vom 01.03. bis 30.09. sind laute Arbeiten nicht zulässig. "
        "Schwere Fahrzeuge dürfen nicht während der Nistzeit eingesetzt werden."
    )
    result = extract_document("doc-1", text)
    assert len(result.refs) == 2
    assert all(r.classification.topic == "Breeding Times" for r in result.refs)
    assert result.refs[0].extent == TemporalExtent.recurring(3, 1, 9, 30)
    assert result.refs[1].extent == TemporalExtent.undated()


def test_extract_document_empty():
    assert extract_document("doc-e", "").refs == []


def test_extract_document_order_follows_sentence_index():
    text = (
        "Lagerung von Bauschutt ist verboten. "
        "Die Aussicht ist toll. "
        "Das Befahren ist im Jahr 2021 untersagt."
    )
    refs = extract_document("doc-o", text).refs
    assert [r.sentence.index for r in refs] == [0, 2]


def test_classifier_soundness_every_ref_has_prohibition_cue():
    rules = default_rules()
    text = (
        "Während der Brutzeit sind Arbeiten nicht zulässig. "
        "Das Betreten ist verboten. "
        "Schöner Blick über den See. "
        "Entry is prohibited during March 2022."
    )
    for ref in extract_document("doc-s", text, rules).refs:
        assert rules._prohibition_re.search(ref.sentence.text)


def test_rule_table_rejects_garbage():
    with pytest.raises(ExtractionError):
        RuleTable({"prohibitionCues": []})
    with pytest.raises(ExtractionError):
        RuleTable(
            {
                "prohibitionCues": [],
                "conditionCues": [],
                "topics": {},
                "months": {"january": 13},
            }
        )


def test_registry_lists_topics_plus_general():
    registry = default_rules().registry()
    assert "Breeding Times" in registry
    assert "General" in registry
    assert registry[-1] == "General"
