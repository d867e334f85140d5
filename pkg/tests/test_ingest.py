from __future__ import annotations

import json
from pathlib import Path

import pytest

from raiqb import seeds
from raiqb.errors import BankSyntaxError, IntegrityError, SchemaError
from raiqb.ingest import (
    bank_to_dict,
    parse_bank,
    parse_extension,
    extend_bank,
    serialize_bank,
    serialize_extension,
)
from raiqb.model import PrincipleId, summarize

from .conftest import DATA
from .helpers import make_question, tiny_bank


def minimal_document() -> dict:
    """Eight principle questions plus one P1 sub-question."""
    bank = tiny_bank([make_question("QB-P1-001")])
    return bank_to_dict(bank)


class TestParse:
    def test_minimal_document_counts(self):
        bank = parse_bank(json.dumps(minimal_document()))
        assert summarize(bank).totals == (1, 1, 1, 0)

    def test_malformed_json_reports_position(self):
        with pytest.raises(BankSyntaxError) as excinfo:
            parse_bank('{"version": "x",')
        assert excinfo.value.line == 1
        assert excinfo.value.column is not None

    def test_unknown_key_is_schema_error(self):
        doc = minimal_document()
        doc["extra"] = 1
        with pytest.raises(SchemaError, match="unknown key"):
            parse_bank(json.dumps(doc))

    def test_missing_question_key_is_schema_error(self):
        doc = minimal_document()
        question = doc["principles"][0]["categories"][0]["subcategories"][0]["questions"][0]
        del question["gate"]
        with pytest.raises(SchemaError, match="missing key"):
            parse_bank(json.dumps(doc))

    def test_unknown_question_key_is_schema_error(self):
        doc = minimal_document()
        question = doc["principles"][0]["categories"][0]["subcategories"][0]["questions"][0]
        question["surprise"] = True
        with pytest.raises(SchemaError, match="unknown key"):
            parse_bank(json.dumps(doc))

    def test_bad_level_is_schema_error(self):
        doc = minimal_document()
        doc["principles"][0]["principle_question"]["level"] = 5
        with pytest.raises(SchemaError, match="level"):
            parse_bank(json.dumps(doc))

    def test_bad_stage_is_schema_error(self):
        doc = minimal_document()
        doc["principles"][0]["principle_question"]["stage"] = "ideation"
        with pytest.raises(SchemaError, match="stage"):
            parse_bank(json.dumps(doc))

    def test_wrong_principle_count_is_schema_error(self):
        doc = minimal_document()
        doc["principles"] = doc["principles"][:7]
        with pytest.raises(SchemaError, match="8"):
            parse_bank(json.dumps(doc))

    def test_duplicate_global_id_is_integrity_error(self):
        doc = minimal_document()
        sub = doc["principles"][0]["categories"][0]["subcategories"][0]
        sub["questions"].append(json.loads(json.dumps(sub["questions"][0])))
        with pytest.raises(IntegrityError, match="duplicate global id"):
            parse_bank(json.dumps(doc))

    def test_seed_env_question_text(self, seed_bank):
        q = seed_bank.get("QB-P1-001")
        assert q.text == ("Do you assess and document environmental impact and "
                          "sustainability of AI model training and management activities?")


class TestRoundTrip:
    @pytest.mark.parametrize("name", ["bank_pre_regulation.json", "table1_mirror.json"])
    def test_canonical_documents_round_trip_bytes(self, name):
        text = (DATA / name).read_text(encoding="utf-8")
        assert serialize_bank(parse_bank(text)) == text

    def test_seed_bank_round_trips_bytes(self):
        text = seeds.seed_bank_path().read_text(encoding="utf-8")
        assert serialize_bank(parse_bank(text)) == text

    def test_parse_serialize_structural_equality(self, seed_bank):
        assert parse_bank(serialize_bank(seed_bank)) == seed_bank

    def test_serialization_is_deterministic(self, seed_bank):
        assert serialize_bank(seed_bank) == serialize_bank(seed_bank)

    def test_canonical_form_properties(self, seed_bank):
        text = serialize_bank(seed_bank)
        assert text.endswith("\n")
        parsed = json.loads(text)
        assert list(parsed) == sorted(parsed)


class TestExtensions:
    def test_eu_act_adds_exactly_ten(self, pre_reg_bank):
        ext = seeds.load_extension("EU-Act")
        assert len(ext.new_questions) == 10
        assert len(ext.overlaps) == 15
        extended = extend_bank(pre_reg_bank, ext)
        assert len(extended.subquestions()) == len(pre_reg_bank.subquestions()) + 10

    def test_iso_adds_exactly_twenty_two(self, pre_reg_bank):
        with_euact = extend_bank(pre_reg_bank, seeds.load_extension("EU-Act"))
        ext = seeds.load_extension("ISO")
        assert len(ext.new_questions) == 22
        assert len(ext.overlaps) == 8
        extended = extend_bank(with_euact, ext)
        assert len(extended.subquestions()) == len(with_euact.subquestions()) + 22

    def test_extensions_are_idempotent(self, pre_reg_bank):
        euact = seeds.load_extension("EU-Act")
        once = extend_bank(pre_reg_bank, euact)
        assert extend_bank(once, euact) == once

        iso = seeds.load_extension("ISO")
        with_iso = extend_bank(once, iso)
        assert extend_bank(with_iso, iso) == with_iso

    def test_empty_extension_is_identity(self, pre_reg_bank):
        from raiqb.ingest import SourceExtension
        from raiqb.model import SourceFramework

        ext = SourceExtension(SourceFramework("EU", "already registered"))
        assert extend_bank(pre_reg_bank, ext) == pre_reg_bank

    def test_overlap_unions_provenance_without_touching_text(self, pre_reg_bank):
        ext = seeds.load_extension("EU-Act")
        extended = extend_bank(pre_reg_bank, ext)
        before = pre_reg_bank.get("QB-P1-001")
        after = extended.get("QB-P1-001")
        assert after.text == before.text
        assert "EU-Act" in after.sources
        assert set(before.internal_ids) < set(after.internal_ids)

    def test_extension_never_removes_questions(self, pre_reg_bank):
        extended = extend_bank(pre_reg_bank, seeds.load_extension("EU-Act"))
        old_ids = {q.global_id for q in pre_reg_bank.all_questions()}
        new_ids = {q.global_id for q in extended.all_questions()}
        assert old_ids <= new_ids
        for gid in old_ids:
            assert extended.get(gid).text == pre_reg_bank.get(gid).text

    def test_fresh_ids_continue_principle_sequence(self, pre_reg_bank):
        extended = extend_bank(pre_reg_bank, seeds.load_extension("EU-Act"))
        added = [q for q in extended.subquestions()
                 if q.global_id not in {x.global_id for x in pre_reg_bank.subquestions()}]
        for q in added:
            seq = int(q.global_id.rsplit("-", 1)[1])
            assert seq > pre_reg_bank.max_sequence(q.principle)

    def test_dangling_overlap_target_is_integrity_error(self, pre_reg_bank):
        from raiqb.ingest import SourceExtension
        from raiqb.model import SourceFramework

        ext = SourceExtension(SourceFramework("EU-Act", "act"),
                              overlaps=(("X-1", "QB-P1-999"),))
        with pytest.raises(IntegrityError, match="does not resolve"):
            extend_bank(pre_reg_bank, ext)

    def test_candidate_with_unknown_subcategory_is_integrity_error(self, pre_reg_bank):
        from raiqb.ingest import CandidateQuestion, SourceExtension
        from raiqb.model import LifecycleStage, SourceFramework

        cand = CandidateQuestion(
            ref="X-1", text="Probe?", level=2, stage=LifecycleStage.DESIGN,
            principle=PrincipleId.P1, category_id="environmental-impact",
            subcategory_id="nope")
        ext = SourceExtension(SourceFramework("EU-Act", "act"), (cand,))
        with pytest.raises(IntegrityError, match="not found"):
            extend_bank(pre_reg_bank, ext)

    def test_extension_documents_round_trip(self):
        for code in ("EU-Act", "ISO"):
            path = seeds.data_dir() / seeds.EXTENSION_FILES[code]
            text = path.read_text(encoding="utf-8")
            assert serialize_extension(parse_extension(text)) == text

    def test_candidate_in_both_lists_is_schema_error(self):
        raw = json.loads(serialize_extension(seeds.load_extension("EU-Act")))
        raw["overlaps"].append({"ref": raw["new_questions"][0]["ref"],
                                "existing_global_id": "QB-P1-001"})
        with pytest.raises(SchemaError, match="also appear"):
            parse_extension(json.dumps(raw))

    def test_applying_both_extensions_reproduces_seed_structure(self, pre_reg_bank,
                                                                seed_bank):
        extended = extend_bank(extend_bank(pre_reg_bank, seeds.load_extension("EU-Act")),
                               seeds.load_extension("ISO"))
        assert {q.global_id for q in extended.subquestions()} == {
            q.global_id for q in seed_bank.subquestions()}
        for q in extended.subquestions():
            assert seed_bank.get(q.global_id).text == q.text
