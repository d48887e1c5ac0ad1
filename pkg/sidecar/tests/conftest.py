import pytest

from uslt_sidecar.engine import ModelEngine

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "the", "a", "an", "court", "order", "granted", "denied", "motion",
    "judge", "rule", "law", "man", "ban", "act", "crime", "person",
    "paper", "filed", "held", "united", "states", "in", "of", "to",
    "was", "is", "injunction", "sought", "he", "##s", "##ed", "##ing", ".", ",",
]


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    """A small randomly initialized fill-mask model saved to disk."""
    import torch
    from transformers import BertConfig, BertForMaskedLM, BertTokenizer

    root = tmp_path_factory.mktemp("tiny_model")
    vocab_file = root / "vocab.txt"
    vocab_file.write_text("\n".join(VOCAB) + "\n")
    tokenizer = BertTokenizer(str(vocab_file), do_lower_case=True)
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=32,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=64,
        max_position_embeddings=128,
    )
    torch.manual_seed(0)
    model = BertForMaskedLM(config)
    model.save_pretrained(root)
    tokenizer.save_pretrained(root)
    return str(root)


@pytest.fixture(scope="session")
def engine(tiny_model_dir):
    return ModelEngine(tiny_model_dir)
