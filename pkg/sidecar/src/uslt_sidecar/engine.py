"""Masked-LM inference over a pretrained fill-mask model.

The model and tokenizer are loaded once and used read-only in eval mode, so
identical requests always produce identical outputs. Candidates are raw
vocabulary tokens (subword pieces included); elimination is the consumer's
job.
"""

from __future__ import annotations

import re

MASK_TOKEN = "[MASK]"

# Shared word-token convention: maximal letter runs with internal
# apostrophes/hyphens. Loss positions index these tokens.
WORD_RE = re.compile(r"[^\W\d_]+(?:['’-][^\W\d_]+)*")


class EngineError(RuntimeError):
    """Invalid inference request (bad mask count, bad position)."""


class ModelEngine:
    def __init__(self, model_name: str):
        import torch
        from transformers import AutoModelForMaskedLM, AutoTokenizer

        self.torch = torch
        self.model_name = model_name
        self.tokenizer = AutoTokenizer.from_pretrained(model_name)
        self.model = AutoModelForMaskedLM.from_pretrained(model_name)
        self.model.eval()

    def fill(self, original: str, masked: str, top_n: int) -> list[list[tuple[str, float]]]:
        """Top-``top_n`` single-token candidates per mask, probability order.

        The original/masked sentences are encoded as a standard sentence
        pair so the model sees the unmasked context alongside the masks.
        """
        n_masks = masked.count(MASK_TOKEN)
        if n_masks == 0:
            raise EngineError("masked sentence contains no mask token")
        masked_native = masked.replace(MASK_TOKEN, self.tokenizer.mask_token)
        encoding = self.tokenizer(
            original, masked_native, return_tensors="pt", truncation=True
        )
        mask_id = self.tokenizer.mask_token_id
        positions = (encoding["input_ids"][0] == mask_id).nonzero(as_tuple=True)[0]
        if len(positions) != n_masks:
            raise EngineError(
                f"tokenizer produced {len(positions)} mask positions for {n_masks} masks"
            )
        with self.torch.no_grad():
            logits = self.model(**encoding).logits[0]
        slots = []
        for pos in positions:
            probs = self.torch.softmax(logits[pos], dim=-1)
            values, indices = self.torch.topk(probs, min(top_n, probs.shape[-1]))
            tokens = self.tokenizer.convert_ids_to_tokens(indices.tolist())
            slots.append(
                [(tok, float(p)) for tok, p in zip(tokens, values.tolist()) if p > 0.0]
            )
        return slots

    def loss(self, sentence: str, position: int) -> float:
        """Cross-entropy of the true word at ``position`` when masked.

        Multi-subword words are masked subword by subword in one pass; the
        loss is the mean over their pieces.
        """
        tokens = list(WORD_RE.finditer(sentence))
        if not 0 <= position < len(tokens):
            raise EngineError(
                f"position {position} out of range for {len(tokens)} word tokens"
            )
        match = tokens[position]
        word = match.group(0)
        pieces = self.tokenizer.tokenize(word)
        if not pieces:
            pieces = [self.tokenizer.unk_token]
        piece_ids = self.tokenizer.convert_tokens_to_ids(pieces)
        masked_sentence = (
            sentence[: match.start()]
            + " ".join(self.tokenizer.mask_token for _ in pieces)
            + sentence[match.end() :]
        )
        encoding = self.tokenizer(masked_sentence, return_tensors="pt", truncation=True)
        mask_id = self.tokenizer.mask_token_id
        positions = (encoding["input_ids"][0] == mask_id).nonzero(as_tuple=True)[0]
        if len(positions) != len(pieces):
            raise EngineError("mask positions lost during encoding")
        with self.torch.no_grad():
            logits = self.model(**encoding).logits[0]
        total = 0.0
        for pos, piece_id in zip(positions, piece_ids):
            log_probs = self.torch.log_softmax(logits[pos], dim=-1)
            total += float(-log_probs[piece_id])
        return max(total / len(pieces), 0.0)
