#pragma once

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "xspectral/error.hpp"

namespace xspectral::dataset {

enum class Eye { left, right };
enum class Spectrum { NIR, VIS, GRAY };
enum class Split { train, test };
enum class Kind { periocular, iris };

inline const char* to_string(Eye e) { return e == Eye::left ? "left" : "right"; }
inline const char* to_string(Spectrum s) {
  switch (s) {
    case Spectrum::NIR: return "nir";
    case Spectrum::VIS: return "vis";
    default: return "gray";
  }
}
inline const char* to_string(Split s) { return s == Split::train ? "train" : "test"; }
inline const char* to_string(Kind k) { return k == Kind::periocular ? "periocular" : "iris"; }

inline Eye eye_from_string(const std::string& s) {
  if (s == "left") return Eye::left;
  if (s == "right") return Eye::right;
  throw ParseError("unknown eye: " + s);
}
inline Spectrum spectrum_from_string(const std::string& s) {
  if (s == "nir") return Spectrum::NIR;
  if (s == "vis") return Spectrum::VIS;
  if (s == "gray") return Spectrum::GRAY;
  throw ParseError("unknown spectrum: " + s);
}
inline Split split_from_string(const std::string& s) {
  if (s == "train") return Split::train;
  if (s == "test") return Split::test;
  throw ParseError("unknown split: " + s);
}
inline Kind kind_from_string(const std::string& s) {
  if (s == "periocular") return Kind::periocular;
  if (s == "iris") return Kind::iris;
  throw ParseError("unknown dataset kind: " + s);
}

inline constexpr int kMaxSampleIndex = 15;

struct SampleKey {
  int subject_id = 1;               // >= 1
  Eye eye = Eye::left;
  Spectrum spectrum = Spectrum::NIR;
  int sample_index = 1;             // in [1, kMaxSampleIndex]

  auto tie() const { return std::tie(subject_id, eye, spectrum, sample_index); }
  bool operator==(const SampleKey& o) const { return tie() == o.tie(); }
  bool operator<(const SampleKey& o) const { return tie() < o.tie(); }

  std::string str() const {
    std::ostringstream os;
    os << "(" << subject_id << ", " << to_string(eye) << ", " << to_string(spectrum) << ", "
       << sample_index << ")";
    return os.str();
  }

  void validate() const {
    if (subject_id < 1) throw ParseError("subject_id must be >= 1 in " + str());
    if (sample_index < 1 || sample_index > kMaxSampleIndex) {
      throw ParseError("sample_index out of [1, 15] in " + str());
    }
  }
};

struct IndexEntry {
  SampleKey key;
  std::string path;
  Split split = Split::train;
};

/// Immutable once built; the paper's 10/5 rule generalizes to the first
/// ceil(2n/3) indices per (subject, eye, spectrum) group for n != 15.
class DatasetIndex {
 public:
  DatasetIndex() = default;
  DatasetIndex(Kind kind, std::vector<IndexEntry> entries) : kind_(kind), entries_(std::move(entries)) {
    std::sort(entries_.begin(), entries_.end(),
              [](const IndexEntry& a, const IndexEntry& b) { return a.key < b.key; });
    for (const auto& e : entries_) e.key.validate();
    for (std::size_t i = 1; i < entries_.size(); ++i) {
      if (entries_[i].key == entries_[i - 1].key) {
        throw ParseError("duplicate sample key " + entries_[i].key.str());
      }
    }
  }

  Kind kind() const { return kind_; }
  const std::vector<IndexEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

  std::optional<std::string> find(const SampleKey& key) const {
    auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                               [](const IndexEntry& e, const SampleKey& k) { return e.key < k; });
    if (it != entries_.end() && it->key == key) return it->path;
    return std::nullopt;
  }

  std::vector<int> subjects() const {
    std::set<int> s;
    for (const auto& e : entries_) s.insert(e.key.subject_id);
    return {s.begin(), s.end()};
  }

  /// Every NIR key must have its VIS twin and conversely.
  void check_pairwise_complete() const {
    for (const auto& e : entries_) {
      if (e.key.spectrum != Spectrum::NIR && e.key.spectrum != Spectrum::VIS) continue;
      SampleKey twin = e.key;
      twin.spectrum = e.key.spectrum == Spectrum::NIR ? Spectrum::VIS : Spectrum::NIR;
      if (!find(twin)) {
        throw PairingError("missing counterpart spectrum image for " + twin.str());
      }
    }
  }

  std::vector<IndexEntry> with_split(Split s) const {
    std::vector<IndexEntry> out;
    for (const auto& e : entries_) {
      if (e.split == s) out.push_back(e);
    }
    return out;
  }

 private:
  Kind kind_ = Kind::periocular;
  std::vector<IndexEntry> entries_;
};

namespace detail {

/// First ceil(2n/3) sample indices of a group are train, the rest test.
inline void apply_split_rule(std::vector<IndexEntry>& entries) {
  std::map<std::tuple<int, Eye, Spectrum>, std::vector<IndexEntry*>> groups;
  for (auto& e : entries) {
    groups[{e.key.subject_id, e.key.eye, e.key.spectrum}].push_back(&e);
  }
  for (auto& [_, group] : groups) {
    std::sort(group.begin(), group.end(),
              [](const IndexEntry* a, const IndexEntry* b) { return a->key < b->key; });
    const std::size_t n = group.size();
    const std::size_t n_train = (2 * n + 2) / 3;  // ceil(2n/3)
    for (std::size_t i = 0; i < n; ++i) {
      group[i]->split = i < n_train ? Split::train : Split::test;
    }
  }
}

inline SampleKey parse_sample_filename(const std::string& stem, Spectrum spectrum) {
  // <subject:03d>_<eye>_<index:02d>
  SampleKey key;
  key.spectrum = spectrum;
  const auto first = stem.find('_');
  const auto last = stem.rfind('_');
  if (first == std::string::npos || last == first) {
    throw ParseError("malformed sample filename: " + stem);
  }
  try {
    key.subject_id = std::stoi(stem.substr(0, first));
    key.eye = eye_from_string(stem.substr(first + 1, last - first - 1));
    key.sample_index = std::stoi(stem.substr(last + 1));
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed sample filename: " + stem);
  }
  key.validate();
  return key;
}

}  // namespace detail

/// File name for the canonical layout root/<spectrum>/<subject>_<eye>_<index>.png.
inline std::string sample_filename(const SampleKey& key) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%03d_%s_%02d.png", key.subject_id, to_string(key.eye),
                key.sample_index);
  return buf;
}

/// Scan a PolyU-style directory tree, enforce NIR/VIS pairing, apply the split.
inline DatasetIndex ingest(const std::string& root_path, Kind kind) {
  namespace fs = std::filesystem;
  std::vector<IndexEntry> entries;
  for (Spectrum spectrum : {Spectrum::NIR, Spectrum::VIS}) {
    const fs::path dir = fs::path(root_path) / to_string(spectrum);
    if (!fs::is_directory(dir)) {
      throw ParseError("missing spectrum directory: " + dir.string());
    }
    for (const auto& f : fs::directory_iterator(dir)) {
      if (!f.is_regular_file() || f.path().extension() != ".png") continue;
      IndexEntry e;
      e.key = detail::parse_sample_filename(f.path().stem().string(), spectrum);
      e.path = f.path().string();
      entries.push_back(e);
    }
  }
  detail::apply_split_rule(entries);
  DatasetIndex index(kind, std::move(entries));
  index.check_pairwise_complete();
  return index;
}

/// Deterministic partition by sample_index; no key lands in both halves.
inline std::pair<DatasetIndex, DatasetIndex> split(const DatasetIndex& index) {
  return {DatasetIndex(index.kind(), index.with_split(Split::train)),
          DatasetIndex(index.kind(), index.with_split(Split::test))};
}

inline void write_manifest(const DatasetIndex& index, const std::string& path,
                           const std::vector<std::string>& provenance = {}) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write manifest: " + path);
  for (const auto& line : provenance) out << "# " << line << "\n";
  out << "# kind=" << to_string(index.kind()) << "\n";
  out << "subject,eye,spectrum,index,split,path\n";
  for (const auto& e : index.entries()) {
    out << e.key.subject_id << "," << to_string(e.key.eye) << "," << to_string(e.key.spectrum)
        << "," << e.key.sample_index << "," << to_string(e.split) << "," << e.path << "\n";
  }
}

inline DatasetIndex read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read manifest: " + path);
  std::string line;
  Kind kind = Kind::periocular;
  std::vector<IndexEntry> entries;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line.rfind("# kind=", 0) == 0) {
      kind = kind_from_string(line.substr(7));
      continue;
    }
    if (line[0] == '#') continue;
    if (!header_seen) {
      if (line != "subject,eye,spectrum,index,split,path") {
        throw ParseError("bad manifest header in " + path + ": " + line);
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string f[6];
    for (int i = 0; i < 6; ++i) {
      if (!std::getline(row, f[i], i == 5 ? '\n' : ',')) {
        throw ParseError("bad manifest row in " + path + ": " + line);
      }
    }
    IndexEntry e;
    try {
      e.key.subject_id = std::stoi(f[0]);
      e.key.sample_index = std::stoi(f[3]);
    } catch (const std::invalid_argument&) {
      throw ParseError("bad manifest row in " + path + ": " + line);
    }
    e.key.eye = eye_from_string(f[1]);
    e.key.spectrum = spectrum_from_string(f[2]);
    e.split = split_from_string(f[4]);
    e.path = f[5];
    entries.push_back(e);
  }
  if (!header_seen) throw ParseError("manifest has no header: " + path);
  return DatasetIndex(kind, std::move(entries));
}

}  // namespace xspectral::dataset
