#include "lrpt/knowledge.hpp"

#include <algorithm>

namespace lrpt {

void AssumedIdleness::tick() {
    for (auto& e : entries_) ++e.assumed_idleness;
}

void AssumedIdleness::record_patrol(GridIndex grid, Timestep now) {
    entries_[grid] = {0, now};
}

std::size_t AssumedIdleness::merge_received(const KnowledgeSlice& slice) {
    const KnowledgeSlice* one = &slice;
    return merge_received(std::span<const KnowledgeSlice* const>(&one, 1));
}

std::size_t AssumedIdleness::merge_received(std::span<const KnowledgeSlice* const> slices) {
    std::size_t rejected = 0;
    for (const KnowledgeSlice* slice : slices) {
        const bool valid = std::all_of(slice->begin(), slice->end(), [this](const KnowledgeEntry& e) {
            return e.grid < entries_.size();
        });
        if (!valid) {
            ++rejected;
            continue;
        }
        for (const auto& e : *slice) {
            auto& local = entries_[e.grid];
            if (e.update_time > local.update_time) {
                local = {e.assumed_idleness, e.update_time};
            }
        }
    }
    return rejected;
}

namespace {

constexpr int kGridBits = 24;
constexpr Timestep kTimeLimit = Timestep{1} << (64 - kGridBits);
constexpr std::uint64_t kGridMask = (std::uint64_t{1} << kGridBits) - 1;

// Newest first, then ascending grid. Packing (inverted time, grid) into one
// integer turns that order into a plain ascending sort.
std::uint64_t recency_key(GridIndex k, Timestep update_time) {
    return ((kTimeLimit - 1 - update_time) << kGridBits) | k;
}

bool packable(std::span<const AssumedEntry> entries) {
    return entries.size() <= (std::size_t{1} << kGridBits) &&
           std::all_of(entries.begin(), entries.end(), [](const AssumedEntry& e) { return e.update_time < kTimeLimit; });
}

KnowledgeSlice slice_from_keys(std::span<const AssumedEntry> entries, std::span<const std::uint64_t> keys) {
    KnowledgeSlice out;
    out.reserve(keys.size());
    for (const auto key : keys) {
        const auto k = static_cast<GridIndex>(key & kGridMask);
        out.push_back({k, entries[k].assumed_idleness, entries[k].update_time});
    }
    return out;
}

}  // namespace

KnowledgeSlice truncate_knowledge(const AssumedIdleness& knowledge, std::size_t s) {
    const auto entries = knowledge.entries();
    const std::size_t keep = std::min(s, entries.size());

    if (packable(entries)) {
        std::vector<std::uint64_t> keys(entries.size());
        for (GridIndex k = 0; k < entries.size(); ++k) keys[k] = recency_key(k, entries[k].update_time);
        const auto mid = keys.begin() + static_cast<std::ptrdiff_t>(keep);
        if (keep < keys.size()) std::nth_element(keys.begin(), mid, keys.end());
        std::sort(keys.begin(), mid);
        return slice_from_keys(entries, std::span(keys).first(keep));
    }

    KnowledgeSlice all;
    all.reserve(entries.size());
    for (GridIndex k = 0; k < entries.size(); ++k) {
        all.push_back({k, entries[k].assumed_idleness, entries[k].update_time});
    }
    auto newer = [](const KnowledgeEntry& a, const KnowledgeEntry& b) {
        if (a.update_time != b.update_time) return a.update_time > b.update_time;
        return a.grid < b.grid;
    };
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), newer);
    all.resize(keep);
    return all;
}


KnowledgeSlice RecencyIndex::top(const AssumedIdleness& knowledge, std::size_t s) {
    const auto entries = knowledge.entries();
    if (!packable(entries)) return truncate_knowledge(knowledge, s);
    if (keys_.size() != entries.size()) {
        keys_.resize(entries.size());
        for (GridIndex k = 0; k < entries.size(); ++k) keys_[k] = k;
    }
    for (auto& key : keys_) {
        const auto k = static_cast<GridIndex>(key & kGridMask);
        key = recency_key(k, entries[k].update_time);
    }
    // Insertion sort: cost is linear plus the distance updated entries travel.
    for (std::size_t i = 1; i < keys_.size(); ++i) {
        const auto key = keys_[i];
        std::size_t j = i;
        for (; j > 0 && keys_[j - 1] > key; --j) keys_[j] = keys_[j - 1];
        keys_[j] = key;
    }
    return slice_from_keys(entries, std::span(keys_).first(std::min(s, keys_.size())));
}

}  // namespace lrpt
