#ifndef FRAGILE_CPR_CSV_H_
#define FRAGILE_CPR_CSV_H_

#include <ostream>
#include <string>
#include <vector>

namespace fragile_cpr {

// 12 significant digits, "nan" / "inf" / "-inf" for non-finite values.
std::string FormatNumber(double value);

// Comma-separated rows with LF endings. Metadata lines come first and are
// prefixed with "# "; the header must precede any row.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void Comment(const std::string& text);
  // "# key=value"; the reader side parses these as metadata.
  void Meta(const std::string& key, const std::string& value);
  void Meta(const std::string& key, double value);
  void Header(const std::vector<std::string>& columns);
  // Row width must equal the header width.
  void Row(const std::vector<std::string>& cells);
  void Row(const std::vector<double>& values);

 private:
  void WriteLine(const std::vector<std::string>& cells);

  std::ostream& out_;
  std::size_t width_ = 0;
};

}  // namespace fragile_cpr

#endif  // FRAGILE_CPR_CSV_H_
