import pytest

from uslt.splitting import (
    CONTEXT,
    CORE,
    SplitConfig,
    SplitNode,
    flatten_tree,
    split_sentence,
)
from uslt.textutils import words

from .split_suite import SPLIT_SUITE


def iter_nodes(node):
    yield node
    for child in node.children:
        yield from iter_nodes(child)


def tree_depth(node):
    if not node.children:
        return 0
    return 1 + max(tree_depth(c) for c in node.children)


class TestConfig:
    def test_defaults(self):
        config = SplitConfig()
        assert config.min_split_tokens == 12
        assert config.max_depth == 4

    def test_validation(self):
        with pytest.raises(ValueError):
            SplitConfig(min_split_tokens=3)
        with pytest.raises(ValueError):
            SplitConfig(max_depth=0)


class TestBasics:
    def test_short_sentence_single_leaf(self):
        root = split_sentence("The cat sat.")
        assert root.is_leaf
        assert root.rule_applied is None
        assert root.text == "The cat sat."

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            split_sentence("   ")

    def test_before_clause_fig_style(self):
        root = split_sentence(
            "Before filing a petition for a divorce the plaintiff must have "
            "lived within the state at least one year."
        )
        assert root.rule_applied == "R1-subordinate"
        core, context = root.children
        assert core.label == CORE
        assert context.label == CONTEXT
        assert core.text == (
            "The plaintiff must have lived within the state at least one year."
        )
        assert context.text == "The plaintiff was filing a petition for a divorce."

    def test_terminal_punctuation_everywhere(self):
        for sentence, _rule, _n in SPLIT_SUITE:
            for node in iter_nodes(split_sentence(sentence)):
                assert node.text[-1] in ".!?"
                assert node.text[0].isupper()


class TestSuiteProperties:
    @pytest.mark.parametrize("sentence,rule,min_leaves", SPLIT_SUITE)
    def test_expected_rule_fires(self, sentence, rule, min_leaves):
        root = split_sentence(sentence)
        assert root.rule_applied == rule
        assert len(flatten_tree(root)) >= min_leaves

    @pytest.mark.parametrize("sentence,rule,min_leaves", SPLIT_SUITE)
    def test_one_core_one_context_per_split(self, sentence, rule, min_leaves):
        for node in iter_nodes(split_sentence(sentence)):
            if node.rule_applied is not None:
                assert len(node.children) == 2
                assert [c.label for c in node.children] == [CORE, CONTEXT]
            else:
                assert node.children == []

    @pytest.mark.parametrize("sentence,rule,min_leaves", SPLIT_SUITE)
    def test_children_strictly_shorter(self, sentence, rule, min_leaves):
        for node in iter_nodes(split_sentence(sentence)):
            if node.children:
                parent_tokens = len(words(node.text))
                for child in node.children:
                    assert len(words(child.text)) < parent_tokens

    @pytest.mark.parametrize("sentence,rule,min_leaves", SPLIT_SUITE)
    def test_depth_bounded(self, sentence, rule, min_leaves):
        config = SplitConfig()
        assert tree_depth(split_sentence(sentence, config)) <= config.max_depth

    @pytest.mark.parametrize("sentence,rule,min_leaves", SPLIT_SUITE)
    def test_leaves_are_fixed_points(self, sentence, rule, min_leaves):
        root = split_sentence(sentence)
        for leaf_text in flatten_tree(root):
            again = split_sentence(leaf_text)
            assert again.is_leaf
            assert again.text == leaf_text

    @pytest.mark.parametrize("sentence,rule,min_leaves", SPLIT_SUITE)
    def test_content_words_preserved(self, sentence, rule, min_leaves):
        from uslt.splitting import (
            DEFAULT_COORDINATING,
            DEFAULT_RELATIVE,
            DEFAULT_SUBORDINATING,
        )

        cues = set(DEFAULT_SUBORDINATING) | set(DEFAULT_RELATIVE) | set(DEFAULT_COORDINATING)
        root = split_sentence(sentence)
        source = [w.lower() for w in words(sentence) if w.lower() not in cues]
        produced = []
        for leaf in flatten_tree(root):
            produced.extend(w.lower() for w in words(leaf))
        for word in set(source):
            assert produced.count(word) >= source.count(word), word


class TestDepthAndThresholds:
    def test_max_depth_one_splits_once(self):
        sentence = SPLIT_SUITE[26][0]  # triple-clause nested fixture
        root = split_sentence(sentence, SplitConfig(max_depth=1))
        assert tree_depth(root) == 1
        assert all(child.is_leaf for child in root.children)

    def test_high_threshold_blocks_split(self):
        sentence = SPLIT_SUITE[0][0]
        root = split_sentence(sentence, SplitConfig(min_split_tokens=50))
        assert root.is_leaf

    def test_custom_cues(self):
        config = SplitConfig(subordinating_cues=("whenever",))
        root = split_sentence(
            "Whenever the committee issues a report, the council must schedule a public hearing."
        , config)
        assert root.rule_applied == "R1-subordinate"


class TestFlatten:
    def test_single_leaf(self):
        root = split_sentence("The cat sat.")
        assert flatten_tree(root) == ["The cat sat."]

    def test_core_first_order(self):
        root = split_sentence(
            "Although the court agreed with the argument, the motion was "
            "ultimately denied by the panel."
        )
        assert flatten_tree(root, "core-first") == [
            "The motion was ultimately denied by the panel.",
            "The court agreed with the argument.",
        ]

    def test_context_first_order(self):
        root = split_sentence(
            "Although the court agreed with the argument, the motion was "
            "ultimately denied by the panel."
        )
        assert flatten_tree(root, "context-first") == [
            "The court agreed with the argument.",
            "The motion was ultimately denied by the panel.",
        ]

    def test_depth_two_fixture_order(self):
        root = split_sentence(SPLIT_SUITE[26][0])
        leaves = flatten_tree(root)
        assert leaves == [
            "The agency continued its enforcement program for months.",
            "The regulated companies filed numerous objections with the board.",
            "The statute was repealed last year.",
        ]

    def test_unknown_order_rejected(self):
        root = split_sentence("The cat sat.")
        with pytest.raises(ValueError):
            flatten_tree(root, "sideways")

    def test_manual_tree(self):
        tree = SplitNode(
            "Parent.", CORE,
            [SplitNode("Core part.", CORE), SplitNode("Context part.", CONTEXT)],
            "R1-subordinate",
        )
        assert flatten_tree(tree) == ["Core part.", "Context part."]
        assert flatten_tree(tree, "context-first") == ["Context part.", "Core part."]


class TestSpecificTransforms:
    def test_relative_with_referent_duplication(self):
        root = split_sentence(
            "The defendant, who fled the scene of the accident, was convicted "
            "by the jury last year."
        )
        core, context = root.children
        assert core.text == "The defendant was convicted by the jury last year."
        assert context.text == "The defendant fled the scene of the accident."

    def test_coordination_with_subject_copy(self):
        root = split_sentence(
            "The board approved the merger of the two companies, and announced "
            "the decision to the shareholders promptly."
        )
        core, context = root.children
        assert core.text == "The board approved the merger of the two companies."
        assert context.text == (
            "The board announced the decision to the shareholders promptly."
        )

    def test_medial_because(self):
        root = split_sentence(
            "The plaintiff must act within thirty days because the statute "
            "plainly requires a timely filing."
        )
        core, context = root.children
        assert core.text == "The plaintiff must act within thirty days."
        assert context.text == "The statute plainly requires a timely filing."

    def test_semicolon_coordination(self):
        root = split_sentence(
            "The court reviewed the petition carefully; the clerk recorded the "
            "judgment in the ledger."
        )
        assert root.rule_applied == "R3-coordination"
        assert flatten_tree(root) == [
            "The court reviewed the petition carefully.",
            "The clerk recorded the judgment in the ledger.",
        ]
