#pragma once

#include <filesystem>
#include <string>

#include "transmeter/data/dataset.hpp"

namespace transmeter {

// Loads a UTF-8, comma-separated file with a header row. Every non-label cell
// must parse as a finite real. The label column must hold exactly two distinct
// values; cells equal to `positive_label` map to 1, the other value to 0.
// Feature column order is preserved. Errors name the offending row/column.
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column,
                 const std::string& positive_label);

// Writes a dataset back out in the same dialect, labels as pos/neg strings.
void write_csv(const std::filesystem::path& path, const Dataset& ds,
               const std::string& label_column = "label",
               const std::string& positive_label = "pos",
               const std::string& negative_label = "neg");

}  // namespace transmeter
