#pragma once

#include <filesystem>

#include "picolit/annotations.hpp"
#include "picolit/corpus.hpp"
#include "picolit/index.hpp"

namespace picolit {

/// On-disk layout of a store directory.
struct StorePaths {
    std::filesystem::path dir;

    std::filesystem::path corpus() const { return dir / "corpus.jsonl"; }
    std::filesystem::path annotations() const { return dir / "annotations.jsonl"; }
    std::filesystem::path index() const { return dir / "index.bin"; }
};

/// Everything a query needs, loaded from a store directory. Immutable once
/// opened; share it across threads by const reference.
struct Store {
    Corpus corpus;
    AnnotationStore annotations;
    InvertedIndex index;

    /// Throws Error if the corpus or index is missing. A missing annotation
    /// file means no annotations.
    static Store open(const std::filesystem::path& dir);
};

/// Replaces the store's corpus. Stale annotations and index files are removed.
void save_corpus(const std::filesystem::path& dir, const Corpus& corpus);
void save_annotations(const std::filesystem::path& dir, const AnnotationStore& annotations);
void save_index(const std::filesystem::path& dir, const InvertedIndex& index);

Corpus load_corpus(const std::filesystem::path& dir);
/// Empty store when the annotation file does not exist.
AnnotationStore load_annotations(const std::filesystem::path& dir, const Corpus& corpus);

}  // namespace picolit
