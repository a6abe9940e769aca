import hashlib
import json
from dataclasses import replace

import pytest

from handedness.bench import (
    GeneratorParams,
    GeometryInfeasible,
    Grip,
    MalformedRecord,
    TraceRecord,
    UnlabeledRecord,
    allocate_labels,
    evaluate,
    generate_corpus,
    generate_swipe,
    read_corpus,
    record_from_json,
    record_to_json,
    write_corpus,
)
from handedness.geometry import Hand, classify_trace, fit_quadratic, mirror_trace


class TestGenerateSwipe:
    def test_noiseless_right_thumb_has_positive_curvature(self):
        rec = generate_swipe(GeneratorParams(grip=Grip.RIGHT_THUMB, noise_sigma=0.0), 0)
        assert fit_quadratic(rec.trace).c > 0

    def test_noiseless_left_thumb_has_negative_curvature(self):
        rec = generate_swipe(GeneratorParams(grip=Grip.LEFT_THUMB, noise_sigma=0.0), 0)
        assert fit_quadratic(rec.trace).c < 0

    def test_noiseless_index_finger_is_ambiguous(self):
        rec = generate_swipe(GeneratorParams(grip=Grip.INDEX_FINGER, noise_sigma=0.0), 0)
        fit = fit_quadratic(rec.trace)
        assert abs(fit.c) < 1e-5
        assert classify_trace(rec.trace).label is Hand.AMBIGUOUS

    def test_same_seed_same_trace(self):
        params = GeneratorParams(seed=99)
        assert generate_swipe(params, 7) == generate_swipe(params, 7)

    def test_timestamps_strictly_increasing(self):
        rec = generate_swipe(GeneratorParams(seed=3), 1)
        ts = [s.t for s in rec.trace.samples]
        assert all(b > a for a, b in zip(ts, ts[1:]))

    def test_samples_on_screen(self):
        for i in range(50):
            rec = generate_swipe(GeneratorParams(seed=1, noise_sigma=4.0), i)
            assert all(0 <= s.x <= 480 and 0 <= s.y <= 960 for s in rec.trace.samples)

    def test_infeasible_geometry_raises(self):
        # A 160px screen cannot contain an arc of a 384px thumb anchored off its corner.
        with pytest.raises(GeometryInfeasible):
            generate_swipe(GeneratorParams(screen_w=160.0, screen_h=240.0), 0)

    def test_mirror_duality(self):
        for i in range(20):
            right = generate_swipe(GeneratorParams(grip=Grip.RIGHT_THUMB, seed=5), i)
            left = generate_swipe(GeneratorParams(grip=Grip.LEFT_THUMB, seed=5), i)
            mirrored = mirror_trace(right.trace, 480.0)
            for a, b in zip(left.trace.samples, mirrored.samples):
                assert a.x == pytest.approx(b.x, abs=1e-9)
                assert (a.y, a.t) == (b.y, b.t)


class TestCorpus:
    def test_exact_label_proportions(self):
        labels = allocate_labels({Grip.LEFT_THUMB: 0.5, Grip.RIGHT_THUMB: 0.5}, 800, 42)
        assert labels.count(Grip.LEFT_THUMB) == 400
        assert labels.count(Grip.RIGHT_THUMB) == 400

    def test_distractor_proportion(self):
        mix = {Grip.LEFT_THUMB: 0.45, Grip.RIGHT_THUMB: 0.45, Grip.INDEX_FINGER: 0.1}
        labels = allocate_labels(mix, 1400, 7)
        assert labels.count(Grip.INDEX_FINGER) == 140

    def test_regeneration_same_digest(self, tmp_path):
        mix = {Grip.LEFT_THUMB: 0.5, Grip.RIGHT_THUMB: 0.5}
        digests = []
        for run in range(2):
            path = tmp_path / f"corpus{run}.jsonl"
            write_corpus(generate_corpus(GeneratorParams(), mix, 50, 42), path)
            digests.append(hashlib.sha256(path.read_bytes()).hexdigest())
        assert digests[0] == digests[1]

    def test_round_trip(self, tmp_path):
        records = generate_corpus(GeneratorParams(), {Grip.RIGHT_THUMB: 1.0}, 10, 1)
        path = tmp_path / "corpus.jsonl"
        write_corpus(records, path)
        assert read_corpus(path) == records

    def test_unknown_fields_preserved(self):
        rec = generate_swipe(GeneratorParams(), 0)
        obj = record_to_json(rec)
        obj["annotator"] = "someone"
        back = record_from_json(obj)
        assert back.extra == {"annotator": "someone"}
        assert record_to_json(back)["annotator"] == "someone"

    def test_empty_file_is_empty_corpus(self, tmp_path):
        path = tmp_path / "empty.jsonl"
        path.write_text("")
        assert read_corpus(path) == []

    def test_malformed_line_reported_with_position(self, tmp_path):
        good = json.dumps(record_to_json(generate_swipe(GeneratorParams(), 0)))
        path = tmp_path / "bad.jsonl"
        path.write_text(good + "\nnot json\n")
        with pytest.raises(MalformedRecord, match=":2"):
            read_corpus(path)

    def test_unlabeled_record_readable_but_not_evaluable(self, tmp_path):
        rec = generate_swipe(GeneratorParams(), 0)
        obj = record_to_json(rec)
        del obj["label"]
        path = tmp_path / "unlabeled.jsonl"
        path.write_text(json.dumps(obj) + "\n")
        records = read_corpus(path)
        assert records[0].label is None
        with pytest.raises(UnlabeledRecord):
            evaluate(records)


class TestEvaluate:
    def test_noiseless_corpus_is_perfect(self):
        mix = {Grip.LEFT_THUMB: 0.5, Grip.RIGHT_THUMB: 0.5}
        records = generate_corpus(GeneratorParams(noise_sigma=0.0), mix, 100, 3)
        report = evaluate(records)
        assert report.accuracy == 1.0
        assert report.sign_consistency == 1.0
        assert report.ambiguous == 0

    def test_index_finger_counts_correct_when_withheld(self):
        records = generate_corpus(GeneratorParams(noise_sigma=0.0), {Grip.INDEX_FINGER: 1.0}, 20, 3)
        report = evaluate(records)
        assert report.correct == 20
        assert report.confusion["index_finger"]["ambiguous"] == 20

    def test_counts_sum(self):
        mix = {Grip.LEFT_THUMB: 0.45, Grip.RIGHT_THUMB: 0.45, Grip.INDEX_FINGER: 0.1}
        records = generate_corpus(GeneratorParams(noise_sigma=4.0), mix, 200, 5)
        report = evaluate(records)
        assert report.correct + report.ambiguous + report.misclassified == report.total
        assert sum(sum(row.values()) for row in report.confusion.values()) == report.total
        assert 0.0 <= report.accuracy <= 1.0
        assert 0.0 <= report.mean_r2 <= 1.0

    def test_determinism(self):
        mix = {Grip.LEFT_THUMB: 0.5, Grip.RIGHT_THUMB: 0.5}
        records = generate_corpus(GeneratorParams(), mix, 60, 9)
        assert evaluate(records) == evaluate(records)

    def test_accuracy_degrades_monotonically_with_noise(self):
        accuracies = []
        mix = {Grip.LEFT_THUMB: 0.5, Grip.RIGHT_THUMB: 0.5}
        for sigma in (0.0, 1.0, 2.0, 4.0, 8.0):
            records = generate_corpus(GeneratorParams(noise_sigma=sigma), mix, 500, 11)
            accuracies.append(evaluate(records).accuracy)
        assert all(b <= a for a, b in zip(accuracies, accuracies[1:]))

    def test_report_table_renders(self):
        records = generate_corpus(GeneratorParams(), {Grip.RIGHT_THUMB: 1.0}, 10, 1)
        table = evaluate(records).to_table()
        assert "accuracy" in table and "right_thumb" in table
