import json

import pytest

import repetext as rt


def test_stats_and_repeats():
    corpus = rt.load_corpus("Hello world.\n\nHello world.")
    s = corpus.stats
    assert (s.paragraph_count, s.sentence_count, s.word_count, s.token_count) == (2, 2, 4, 6)

    phrases = rt.extract_repeats(rt.load_corpus("x y x y x")).phrases
    assert [p.tokens for p in phrases] == [["x", "y", "x"]]
    assert [o.start_pos_in_paragraph for o in phrases[0].occurrences] == [0, 2]


def test_oracle_agrees():
    corpus = rt.load_corpus("a b c a b c\n\nb c d b c d b")
    cfg = rt.RepeatConfig()
    cfg.span_paragraphs = True
    assert rt.extract_repeats(corpus, cfg) == rt.oracle_repeats(corpus, cfg)


def test_errors_map_to_python():
    with pytest.raises(rt.InputError):
        rt.load_corpus("")
    cfg = rt.RepeatConfig()
    cfg.max_n = 1
    with pytest.raises(rt.UsageError):
        rt.extract_repeats(rt.load_corpus("a a"), cfg)
    with pytest.raises(rt.Error):
        rt.parse_gazetteer('[{"canonical": "Paris"}, {"canonical": "P", "aliases": ["Paris"]}]')


def test_entities_graph_sequences():
    gaz = rt.parse_gazetteer(json.dumps([
        {"canonical": "William de Kooning", "aliases": ["de Kooning"]},
        {"canonical": "Odysseus"},
        {"canonical": "Caesar"},
    ]))
    corpus = rt.load_corpus("de Kooning met Odysseus.\n\nCaesar\n\nOdysseus and de Kooning")
    mentions = rt.find_mentions(corpus, gaz)
    assert [m.entity_id for m in mentions] == [0, 1, 2, 1, 0]

    g0 = rt.build_graph(mentions, window=0, paragraph_count=3)
    g1 = rt.build_graph(mentions, window=1, paragraph_count=3)
    assert g0.edges == {(0, 1): 2}
    assert g1.weight(1, 2) == 2
    assert rt.subgraph_window_comparison(g0, g1).edges_subset

    scores = rt.pagerank(g1)
    assert abs(sum(scores.values()) - 1.0) < 1e-9

    partition = rt.connected_components(g0)
    labeling = rt.label_paragraphs(mentions, partition, {0, 1}, 3)
    runs = rt.compress_runs(labeling, {0, 1})
    assert [r.component for r in runs.runs] == [0, 1, 0]
    counts = rt.count_patterns(runs, 10)
    assert counts.count([0, 1, 0]) == 1


def test_graph_json_round_trip():
    corpus = rt.load_corpus("A and B.\n\nB and C.")
    gaz = rt.parse_gazetteer('[{"canonical": "A"}, {"canonical": "B"}, {"canonical": "C"}]')
    g = rt.build_graph(rt.find_mentions(corpus, gaz), paragraph_count=2)
    text = rt.render_graph(g, rt.connected_components(g), {0: "A", 1: "B", 2: "C"}, "json")
    back, labels = rt.import_graph_json(text)
    assert back == g
    assert labels[1] == "B"
