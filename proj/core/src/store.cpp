#include "picolit/store.hpp"

#include "picolit/error.hpp"

namespace picolit {

namespace fs = std::filesystem;

Corpus load_corpus(const fs::path& dir)
{
    StorePaths paths{dir};
    if (!fs::exists(paths.corpus())) {
        throw Error("no corpus in store " + dir.string() + " (run ingest first)");
    }
    return Corpus::load(paths.corpus());
}

AnnotationStore load_annotations(const fs::path& dir, const Corpus& corpus)
{
    StorePaths paths{dir};
    AnnotationStore store;
    if (!fs::exists(paths.annotations())) {
        return store;
    }
    auto stats = store.import_jsonl(paths.annotations(), corpus);
    if (!stats.rejected.empty()) {
        throw ParseError("stored annotations are corrupt: " + stats.rejected.front().reason,
                         stats.rejected.front().line_no);
    }
    return store;
}

Store Store::open(const fs::path& dir)
{
    StorePaths paths{dir};
    Store store;
    store.corpus = load_corpus(dir);
    store.annotations = load_annotations(dir, store.corpus);
    if (!fs::exists(paths.index())) {
        throw Error("no index in store " + dir.string() + " (run index first)");
    }
    store.index = InvertedIndex::load(paths.index());
    if (store.index.n_docs() != store.corpus.size()) {
        throw Error("index is stale: " + std::to_string(store.index.n_docs()) + " documents indexed, corpus has "
                    + std::to_string(store.corpus.size()));
    }
    return store;
}

void save_corpus(const fs::path& dir, const Corpus& corpus)
{
    StorePaths paths{dir};
    fs::create_directories(dir);
    fs::remove(paths.annotations());
    fs::remove(paths.index());
    corpus.save(paths.corpus());
}

void save_annotations(const fs::path& dir, const AnnotationStore& annotations)
{
    fs::create_directories(dir);
    annotations.export_jsonl(StorePaths{dir}.annotations());
}

void save_index(const fs::path& dir, const InvertedIndex& index)
{
    fs::create_directories(dir);
    index.save(StorePaths{dir}.index());
}

}  // namespace picolit
