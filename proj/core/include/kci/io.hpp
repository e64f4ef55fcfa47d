#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "kci/ci_test.hpp"
#include "kci/data.hpp"
#include "kci/ui_test.hpp"

namespace kci {

enum class CsvErrorCode { missing_file = 1, missing_column, no_rows, parse };

class CsvError : public std::runtime_error {
 public:
  CsvError(CsvErrorCode code, const std::string& what)
      : std::runtime_error(what), code(code) {}
  CsvErrorCode code;
};

struct IngestResult {
  DataMatrix data;   // standardized
  DataMatrix raw;    // selected columns before standardization
  long dropped_rows = 0;
};

/// RFC-4180 CSV with a header row. Selected columns must be numeric; rows
/// with a non-numeric or missing selected value are dropped (count reported).
/// Empty selector list means all columns.
IngestResult ingest_csv(const std::string& path,
                        const std::vector<std::string>& selectors = {});

void write_csv(const std::string& path, const DataMatrix& data);

/// Resolves selector tokens against column names; a token that is not a
/// name is tried as a 0-based index.
std::vector<int> resolve_columns(const DataMatrix& data,
                                 const std::vector<std::string>& selectors);

std::string report_to_json(const UITestReport& report, const std::string& command);
std::string report_to_json(const CITestReport& report, const std::string& command);

const char* method_name(PValueMethod m);

}  // namespace kci
