#include "tfrom/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <unordered_map>

#include "tfrom/error.hpp"

namespace tfrom {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Line-oriented reader for the two input tables.
class TableReader {
 public:
  TableReader(const std::filesystem::path& path, std::size_t columns)
      : path_(path), in_(path), columns_(columns) {
    if (!in_) throw Error(ErrorCode::IoError, "cannot open " + path.string());
    std::string header;
    if (!next_raw(header)) throw Error(ErrorCode::ParseError, path.string() + ": missing header line");
    delimiter_ = header.find('\t') != std::string::npos ? '\t' : ',';
    if (split_fields(header, delimiter_).size() < columns_) {
      fail("header has fewer than " + std::to_string(columns_) + " columns");
    }
  }

  /// Next non-blank row, or nullopt at end of file.
  std::optional<std::vector<std::string>> next() {
    std::string line;
    while (next_raw(line)) {
      if (trim(line).empty()) continue;
      auto fields = split_fields(line, delimiter_);
      if (fields.size() < columns_) fail("expected " + std::to_string(columns_) + " fields");
      for (std::size_t c = 0; c < columns_; ++c) {
        if (fields[c].empty()) fail("empty field " + std::to_string(c + 1));
      }
      return fields;
    }
    if (in_.bad()) throw Error(ErrorCode::IoError, "read failure on " + path_.string());
    return std::nullopt;
  }

  std::size_t line() const noexcept { return line_; }

  [[noreturn]] void fail(const std::string& why) const {
    throw Error(ErrorCode::ParseError, path_.string() + ":" + std::to_string(line_) + ": " + why);
  }

 private:
  bool next_raw(std::string& out) {
    if (!std::getline(in_, out)) return false;
    ++line_;
    return true;
  }

  std::filesystem::path path_;
  std::ifstream in_;
  std::size_t columns_;
  char delimiter_ = ',';
  std::size_t line_ = 0;
};

std::size_t intern(std::unordered_map<std::string, std::size_t>& index,
                   std::vector<std::string>& labels, const std::string& key) {
  const auto [it, inserted] = index.try_emplace(key, labels.size());
  if (inserted) labels.push_back(key);
  return it->second;
}

struct Triplet {
  std::size_t customer;
  std::size_t item;
  double score;
  std::size_t line;
};

}  // namespace

std::vector<std::string> split_fields(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto end = line.find(delimiter, start);
    fields.push_back(trim(line.substr(start, end == std::string::npos ? std::string::npos : end - start)));
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return fields;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

LoadedInstance load_instance(const std::filesystem::path& preferences_path,
                             const std::filesystem::path& providers_path) {
  struct {
    std::vector<std::string> customer_labels, item_labels, provider_labels, warnings;
  } out;
  std::unordered_map<std::string, std::size_t> customer_index;
  std::unordered_map<std::string, std::size_t> item_index;
  std::unordered_map<std::string, std::size_t> provider_index;

  std::vector<Triplet> triplets;
  {
    TableReader reader(preferences_path, 3);
    while (auto fields = reader.next()) {
      const auto& f = *fields;
      const char* begin = f[2].c_str();
      char* end = nullptr;
      errno = 0;
      const double score = std::strtod(begin, &end);
      if (end == begin || *end != '\0' || errno == ERANGE) reader.fail("bad score '" + f[2] + "'");
      const auto u = intern(customer_index, out.customer_labels, f[0]);
      const auto i = intern(item_index, out.item_labels, f[1]);
      triplets.push_back({u, i, score, reader.line()});
    }
  }

  const std::size_t m = out.customer_labels.size();
  const std::size_t n = out.item_labels.size();
  if (m == 0) throw Error(ErrorCode::ParseError, preferences_path.string() + ": no triplets");

  std::vector<double> scores(m * n, 0.0);
  std::vector<std::size_t> written_at(m * n, 0);
  for (const auto& t : triplets) {
    const std::size_t cell = t.customer * n + t.item;
    if (written_at[cell] != 0) {
      out.warnings.push_back(preferences_path.string() + ":" + std::to_string(t.line) +
                             ": duplicate (" + out.customer_labels[t.customer] + ", " +
                             out.item_labels[t.item] + ") overrides line " +
                             std::to_string(written_at[cell]));
    }
    scores[cell] = t.score;
    written_at[cell] = t.line;
  }

  constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);
  std::vector<std::size_t> provider_of(n, kUnassigned);
  {
    TableReader reader(providers_path, 2);
    while (auto fields = reader.next()) {
      const auto& f = *fields;
      const auto it = item_index.find(f[0]);
      if (it == item_index.end()) {
        throw Error(ErrorCode::UnknownItemInProviderFile,
                    providers_path.string() + ":" + std::to_string(reader.line()) + ": item '" +
                        f[0] + "' has no preference entries");
      }
      const auto p = intern(provider_index, out.provider_labels, f[1]);
      auto& slot = provider_of[it->second];
      if (slot != kUnassigned && slot != p) reader.fail("item '" + f[0] + "' assigned to two providers");
      slot = p;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (provider_of[i] == kUnassigned) {
      throw Error(ErrorCode::MissingProviderForItem, "item '" + out.item_labels[i] + "'");
    }
  }

  return LoadedInstance{build_instance(m, n, std::move(scores), provider_of),
                        std::move(out.customer_labels), std::move(out.item_labels),
                        std::move(out.provider_labels), std::move(out.warnings)};
}

void write_instance(const LoadedInstance& loaded, const std::filesystem::path& preferences_path,
                    const std::filesystem::path& providers_path) {
  const auto& inst = loaded.instance;
  {
    std::ofstream out(preferences_path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + preferences_path.string());
    out << "customer,item,score\n";
    for (std::size_t u = 0; u < inst.customers(); ++u) {
      const auto row = inst.preferences.row(CustomerId(u));
      for (std::size_t i = 0; i < row.size(); ++i) {
        out << loaded.customer_labels[u] << ',' << loaded.item_labels[i] << ','
            << format_double(row[i]) << '\n';
      }
    }
    if (!out) throw Error(ErrorCode::IoError, "write failure on " + preferences_path.string());
  }
  {
    // Grouped by provider so labels reappear in id order when read back.
    std::ofstream out(providers_path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + providers_path.string());
    out << "item,provider\n";
    for (std::size_t p = 0; p < inst.providers(); ++p) {
      for (const ItemId item : inst.catalog.items_of(ProviderId(p))) {
        out << loaded.item_labels[item.index()] << ',' << loaded.provider_labels[p] << '\n';
      }
    }
    if (!out) throw Error(ErrorCode::IoError, "write failure on " + providers_path.string());
  }
}

}  // namespace tfrom
