"""Show the pseudo-word generator and the three admissibility constraints.

Generated candidates must be absent from the dictionary, have every
contiguous 4-gram attested in a real word, and contain a difficult letter
or combination; length picks the bucket.
"""

from dysscreen import (
    LengthBucket,
    build_word_bank,
    default_difficulty,
    generate_pseudowords,
    is_admissible_pseudoword,
    sample_corpus_dir,
    tokenize_directory,
    train_char_model,
)

bank = build_word_bank(tokenize_directory(sample_corpus_dir()))
difficulty = default_difficulty()
print(f"difficult letters: {sorted(difficulty.letters)}")
print(f"difficult combinations: {sorted(difficulty.combinations)}")

model = train_char_model(bank, order=3, seed=7)
for bucket in LengthBucket:
    words = generate_pseudowords(model, bank, difficulty, bucket, n=12)
    print(f"\n{bucket.value} pseudo-words: {', '.join(words)}")
    assert all(is_admissible_pseudoword(w, bank, difficulty, bucket) for w in words)

print("\nwhy candidates get rejected:")
cases = [
    ("bread", LengthBucket.SHORT, "a real dictionary word"),
    ("zxqvy", LengthBucket.SHORT, "4-grams never seen in any real word"),
    ("nestle", LengthBucket.SHORT, "no difficult letter or combination"),
    ("morning", LengthBucket.SHORT, "right word, wrong length bucket"),
]
for candidate, bucket, why in cases:
    verdict = is_admissible_pseudoword(candidate, bank, difficulty, bucket)
    assert verdict is False
    print(f"  {candidate!r:<12} admissible={verdict}  ({why})")
