import pytest

from kgbench.rdf import ParseError, normalize, parse_turtle_strict, serialize_turtle
from kgbench.tasks.base import SizeError
from kgbench.tasks.turtle_fix import (
    ERROR_KINDS,
    TurtleFixSize,
    TurtleFixTask,
    evaluate,
    generate_instance,
    inject_errors,
    restore_errors,
)

SIZE = TurtleFixSize(triple_count=20, error_count=3)


def make(seed, size=SIZE):
    return generate_instance(seed, size)


class TestSizeValidation:
    def test_rejects_zero_triples(self):
        with pytest.raises(SizeError):
            TurtleFixSize(triple_count=0, error_count=1)

    def test_rejects_zero_errors(self):
        with pytest.raises(SizeError):
            TurtleFixSize(triple_count=5, error_count=0)

    def test_error_count_above_statement_count(self):
        with pytest.raises(SizeError, match="manipulable"):
            generate_instance(3, TurtleFixSize(triple_count=2, error_count=50))


class TestReferenceGraph:
    def test_exact_triple_count(self):
        for seed in (0, 1, 17, 999):
            inst = make(seed)
            assert len(inst.reference) == 20

    def test_deterministic_for_seed(self):
        a, b = make(5), make(5)
        assert a.reference == b.reference
        assert a.corrupted_text == b.corrupted_text
        assert a.error_log == b.error_log

    def test_different_seeds_differ(self):
        assert make(1).reference != make(2).reference

    def test_reference_serialization_is_valid(self):
        inst = make(11)
        reparsed = parse_turtle_strict(serialize_turtle(inst.reference))
        assert normalize(reparsed) == normalize(inst.reference)


class TestInjection:
    def test_requested_error_count_logged(self):
        inst = make(23)
        assert len(inst.error_log) == 3

    def test_kinds_are_known(self):
        for seed in range(12):
            for entry in make(seed).error_log:
                assert entry.kind in ERROR_KINDS

    def test_one_manipulation_per_statement(self):
        for seed in range(12):
            indices = [e.statement_index for e in make(seed).error_log]
            assert len(indices) == len(set(indices))

    def test_corruption_is_effective(self):
        # Parsing must fail, or succeed with a different normalized set;
        # otherwise echoing the input would be a perfect answer.
        for seed in range(20):
            inst = make(seed)
            try:
                got = parse_turtle_strict(inst.corrupted_text)
            except ParseError:
                continue
            assert normalize(got) != normalize(inst.reference)

    def test_restore_inverts_injection(self):
        for seed in range(20):
            inst = make(seed)
            restored = restore_errors(inst.corrupted_text, inst.error_log)
            assert normalize(parse_turtle_strict(restored)) == normalize(inst.reference)

    def test_restore_rejects_mismatched_log(self):
        a, b = make(1), make(2)
        with pytest.raises(ValueError, match="does not match"):
            restore_errors(a.corrupted_text, b.error_log)

    def test_inject_errors_standalone(self):
        doc = serialize_turtle(make(31).reference)
        corrupted, log = inject_errors(doc, 2, seed=7)
        assert corrupted != doc
        assert len(log) == 2
        assert restore_errors(corrupted, log) == doc


class TestPrompt:
    def test_prompt_carries_corrupted_text(self):
        inst = make(41)
        assert inst.corrupted_text in inst.prompt

    def test_prompt_has_no_unfilled_placeholders(self):
        assert "{corrupted}" not in make(41).prompt


class TestEvaluate:
    def test_oracle_scores_perfectly(self):
        inst = make(51)
        scores = evaluate(serialize_turtle(inst.reference), inst)
        assert scores.f1 == 1.0
        assert scores.exact_restore is True
        assert scores.answer_parsable is True
        assert scores.failed_statements == 0

    def test_refusal_scores_zero(self):
        scores = evaluate("The file is correct.", make(52))
        assert scores.f1 == 0.0
        assert scores.exact_restore is False

    def test_echoing_corruption_is_not_perfect(self):
        inst = make(53)
        assert evaluate(inst.corrupted_text, inst).exact_restore is False

    def test_fenced_answer_extracted(self):
        inst = make(54)
        wrapped = "Here is the repaired file:\n```turtle\n" + serialize_turtle(inst.reference) + "```\n"
        assert evaluate(wrapped, inst).f1 == 1.0

    def test_partial_credit_between_zero_and_one(self):
        inst = make(55)
        units = serialize_turtle(inst.reference).splitlines()
        half = "\n".join(units[: max(2, len(units) // 2)]) + "\n"
        scores = evaluate(half, inst)
        assert 0.0 < scores.f1 < 1.0
        assert scores.exact_restore is False

    def test_broken_statements_counted(self):
        inst = make(56)
        good = serialize_turtle(inst.reference)
        scores = evaluate(good + "\nthis line is prose, not turtle .\n", inst)
        assert scores.failed_statements >= 1
        assert scores.answer_parsable is False


class TestTaskAdapter:
    def test_default_sizes(self):
        assert TurtleFixTask().default_sizes() == [{"triple_count": 20, "error_count": 3}]

    def test_instance_and_score_keys(self):
        task = TurtleFixTask()
        inst = task.make_instance(
            seed=9, size_index=1, size_params={"triple_count": 20, "error_count": 3}, repetition=1
        )
        scores = task.evaluate(task.oracle_response(inst), inst)
        assert scores["f1"] == 1.0
        assert set(scores) == {
            "f1", "precision", "recall", "answer_parsable", "exact_restore", "failed_statements",
        }

    def test_identity_fields(self):
        task = TurtleFixTask()
        assert task.task_id == "turtle-fix"
        assert task.task_version == "1.0"
        assert task.prompt_template_version == "v1"
