import pytest

from kgbench.rdf import parse_turtle_strict
from kgbench.tasks.synth_gen import (
    DEFAULT_SCHEDULE,
    RangeError,
    SynthGenSize,
    SynthGenTask,
    build_prompt,
    count_entities,
    evaluate,
    foaf_document,
    size_schedule,
)


class TestSchedule:
    def test_eight_doubling_sizes(self):
        assert len(DEFAULT_SCHEDULE) == 8
        assert DEFAULT_SCHEDULE[0] == (5, 10)
        for (p1, l1), (p2, l2) in zip(DEFAULT_SCHEDULE, DEFAULT_SCHEDULE[1:]):
            assert (p2, l2) == (2 * p1, 2 * l1)

    def test_size_schedule_is_one_based(self):
        assert size_schedule(1).persons_requested == 5
        assert size_schedule(8).persons_requested == 640

    @pytest.mark.parametrize("bad", [0, 9, -1])
    def test_out_of_range_index(self, bad):
        with pytest.raises(RangeError, match="outside"):
            size_schedule(bad)

    def test_custom_schedule(self):
        size = size_schedule(2, schedule=((3, 4), (7, 8)))
        assert (size.persons_requested, size.links_requested) == (7, 8)


class TestSizeValidation:
    def test_rejects_nonpositive_persons(self):
        with pytest.raises(RangeError):
            SynthGenSize(persons_requested=0, links_requested=0, size_index=1)

    def test_rejects_negative_links(self):
        with pytest.raises(RangeError):
            SynthGenSize(persons_requested=3, links_requested=-1, size_index=1)

    def test_rejects_links_beyond_capacity(self):
        # 3 persons allow at most 6 ordered pairs without self-links
        with pytest.raises(RangeError, match="capacity"):
            SynthGenSize(persons_requested=3, links_requested=7, size_index=1)

    def test_capacity_boundary_allowed(self):
        SynthGenSize(persons_requested=3, links_requested=6, size_index=1)


class TestOracleDocument:
    @pytest.mark.parametrize("persons,links", [(1, 0), (5, 10), (3, 6), (4, 0), (10, 90)])
    def test_exact_counts(self, persons, links):
        g = parse_turtle_strict(foaf_document(persons, links))
        assert count_entities(g) == (persons, links)

    def test_links_are_distinct_pairs(self):
        g = parse_turtle_strict(foaf_document(6, 30))
        pairs = {
            (t.subject, t.object)
            for t in g
            if t.predicate.value.endswith("knows")
        }
        assert len(pairs) == 30
        assert all(s != o for s, o in pairs)

    def test_overflow_rejected(self):
        with pytest.raises(ValueError, match="capacity"):
            foaf_document(3, 7)

    def test_every_default_size_satisfiable(self):
        for persons, links in DEFAULT_SCHEDULE:
            g = parse_turtle_strict(foaf_document(persons, links))
            assert count_entities(g) == (persons, links)


class TestCounting:
    def test_untyped_subjects_not_persons(self):
        g = parse_turtle_strict(
            "@prefix foaf: <http://xmlns.com/foaf/0.1/> .\n"
            "@prefix ex: <http://e.org/> .\n"
            'ex:a a foaf:Person ; foaf:name "A" .\n'
            'ex:b foaf:name "B" .\n'
        )
        persons, links = count_entities(g)
        assert persons == 1

    def test_duplicate_type_statements_count_once(self):
        g = parse_turtle_strict(
            "@prefix foaf: <http://xmlns.com/foaf/0.1/> .\n"
            "@prefix ex: <http://e.org/> .\n"
            "ex:a a foaf:Person . ex:a a foaf:Person .\n"
        )
        assert count_entities(g) == (1, 0)

    def test_knows_between_untyped_nodes_still_counts(self):
        g = parse_turtle_strict(
            "@prefix foaf: <http://xmlns.com/foaf/0.1/> .\n"
            "@prefix ex: <http://e.org/> .\n"
            "ex:a foaf:knows ex:b .\n"
        )
        assert count_entities(g) == (0, 1)


class TestEvaluate:
    def size(self, persons=5, links=10, index=1):
        return SynthGenSize(persons_requested=persons, links_requested=links, size_index=index)

    def test_oracle_scores_zero_error(self):
        size = self.size()
        scores = evaluate(foaf_document(5, 10), size)
        assert scores.persons_relative_error == 0.0
        assert scores.links_relative_error == 0.0
        assert scores.answer_parsable is True

    def test_refusal_scores_minus_one(self):
        scores = evaluate("The file is correct.", self.size())
        assert scores.persons_relative_error == -1.0
        assert scores.persons_generated == 0

    def test_overshoot_is_positive(self):
        scores = evaluate(foaf_document(10, 20), self.size(5, 10))
        assert scores.persons_relative_error == 1.0
        assert scores.links_relative_error == 1.0

    def test_undershoot_is_negative_fraction(self):
        scores = evaluate(foaf_document(3, 6), self.size(5, 10))
        assert scores.persons_relative_error == (3 - 5) / 5
        assert scores.links_relative_error == (6 - 10) / 10

    def test_zero_links_requested_reports_surplus(self):
        scores = evaluate(foaf_document(4, 3), self.size(4, 0))
        assert scores.links_relative_error == 3.0
        scores = evaluate(foaf_document(4, 0), self.size(4, 0))
        assert scores.links_relative_error == 0.0

    def test_fenced_response_extracted(self):
        wrapped = "```turtle\n" + foaf_document(5, 10) + "```"
        scores = evaluate(wrapped, self.size())
        assert scores.persons_relative_error == 0.0

    def test_salvage_counts_valid_statements_of_broken_answer(self):
        doc = foaf_document(5, 10) + "\nand that is all folks\n"
        scores = evaluate(doc, self.size())
        assert scores.answer_parsable is False
        assert scores.persons_generated == 5


class TestTaskAdapter:
    def test_default_sizes_match_schedule(self):
        sizes = SynthGenTask().default_sizes()
        assert [(s["persons"], s["links"]) for s in sizes] == list(DEFAULT_SCHEDULE)

    def test_prompt_mentions_counts(self):
        size = size_schedule(3)
        prompt = build_prompt(size)
        assert "20" in prompt
        assert "40" in prompt

    def test_oracle_through_adapter(self):
        task = SynthGenTask()
        inst = task.make_instance(
            seed=1, size_index=2, size_params={"persons": 10, "links": 20}, repetition=1
        )
        scores = task.evaluate(task.oracle_response(inst), inst)
        assert scores["persons_relative_error"] == 0.0
        assert scores["links_relative_error"] == 0.0

    def test_score_keys(self):
        task = SynthGenTask()
        inst = task.make_instance(
            seed=1, size_index=1, size_params={"persons": 5, "links": 10}, repetition=1
        )
        scores = task.evaluate("", inst)
        assert set(scores) == {
            "persons_relative_error",
            "links_relative_error",
            "persons_generated",
            "links_generated",
            "answer_parsable",
        }
