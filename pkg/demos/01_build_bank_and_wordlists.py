"""Walk through corpus ingestion and age-graded word-list assembly.

Builds the word bank from the small corpus shipped with the package, then
assembles the 32-item assessment list for one age in each band.
"""

from dysscreen import (
    assemble_word_list,
    build_word_bank,
    default_difficulty,
    sample_corpus_dir,
    tokenize_directory,
    train_char_model,
)

print(f"corpus directory: {sample_corpus_dir()}")
tokens = tokenize_directory(sample_corpus_dir())
print(f"tokenized {sum(t.count for t in tokens)} occurrences of {len(tokens)} distinct words")
print("top ten:", ", ".join(f"{t.text}({t.count})" for t in tokens[:10]))

bank = build_word_bank(tokens)
print(f"\ndictionary: {len(bank.dictionary)} words")
print(f"short bucket (4-6 letters): {len(bank.short_list)} ranked words")
print(f"long bucket  (7-9 letters): {len(bank.long_list)} ranked words")
print(f"attested 4-grams: {len(bank.fourgrams)}")
print("easiest short words:", ", ".join(t.text for t in bank.easy_words[:8]))

model = train_char_model(bank, seed=2026)
difficulty = default_difficulty()

for age in (7, 10, 15):
    wordlist = assemble_word_list(bank, model, difficulty, age_years=age, seed=42)
    print(f"\nage {age} -> {wordlist.age_band.value}")
    for i, item in enumerate(wordlist.items):
        marker = {"Real": " ", "Pseudo": "*", "EasyReal": "e"}[item.kind.value]
        end = "\n" if i % 4 == 3 else "  "
        print(f"{marker} {item.text:<11}", end=end)
print("\n(e = easy opener, * = generated pseudo-word)")
