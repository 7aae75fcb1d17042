#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tfrom/instance.hpp"

namespace tfrom {

/// An instance read from disk together with the external labels its
/// contiguous ids were assigned from (first-appearance order).
struct LoadedInstance {
  Instance instance;
  std::vector<std::string> customer_labels;
  std::vector<std::string> item_labels;
  std::vector<std::string> provider_labels;
  std::vector<std::string> warnings;
};

/// Reads a header-bearing (customer, item, score) triplet table and an
/// (item, provider) table. Comma or tab delimited; the delimiter is taken from
/// the header line. Missing triplets are zero.
LoadedInstance load_instance(const std::filesystem::path& preferences_path,
                             const std::filesystem::path& providers_path);

/// Writes the dense instance back out in the same two-file layout, using the
/// given labels.
void write_instance(const LoadedInstance& loaded, const std::filesystem::path& preferences_path,
                    const std::filesystem::path& providers_path);

/// Splits one delimited line. No quoting support; fields are trimmed.
std::vector<std::string> split_fields(const std::string& line, char delimiter);

/// Fixed 17-significant-digit rendering used by every text output.
std::string format_double(double value);

}  // namespace tfrom
