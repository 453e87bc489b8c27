#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leyes/stream/stream.hpp"

namespace leyes::stream {

struct ManifestEntry {
    std::string file;
    std::uint64_t scene_seed = 0;
    std::uint64_t image_hash = 0;  ///< FNV-1a64 of the encoded PNG bytes
};

struct DatasetManifest {
    int format_version = 1;
    std::string scenario_id;
    int stage = 1;
    std::uint64_t master_seed = 0;
    std::uint64_t count = 0;
    bool complete = false;
    std::uint64_t label_hash = 0;  ///< FNV-1a64 over the label JSONL bytes
    std::vector<ManifestEntry> entries;
};

std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t seed = 0xcbf29ce484222325ULL);

/// One JSON object per sample, used both for the sidecar lines and the
/// manifest hash.
std::string label_record_json(const Sample& sample, const std::string& file_name);

/// Write n samples starting at the stream's current index: 8-bit grayscale
/// PNGs, a labels.jsonl sidecar, optional per-sample heatmap files in the
/// LEYESMAPS format, and manifest.json. Rendering and PNG encoding fan out
/// over `threads` workers; output order and content are index-determined and
/// independent of the worker count. A failed export leaves a manifest with
/// complete=false behind.
DatasetManifest export_dataset(SampleStream& stream, std::uint64_t n, const std::string& directory,
                               bool include_heatmaps = false, int threads = 1);

DatasetManifest read_manifest(const std::string& directory);
void write_manifest(const DatasetManifest& manifest, const std::string& directory);

} // namespace leyes::stream
