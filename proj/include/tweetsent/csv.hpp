#ifndef TWEETSENT_CSV_HPP
#define TWEETSENT_CSV_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace tweetsent {

// Minimal RFC-4180-style reader: '"'-quoted fields may contain the
// delimiter, doubled quotes, and embedded newlines. Reads one record at a
// time so memory use is independent of file size.
class CsvReader {
 public:
  explicit CsvReader(std::istream& in, char delimiter = ',');

  // Fills `fields` with the next record; returns false at end of input.
  // When `quoted` is given it receives, per field, whether the field was
  // quoted — which lets formats distinguish an absent value () from an
  // empty present one ("").
  bool next(std::vector<std::string>& fields,
            std::vector<bool>* quoted = nullptr);

  // 1-based line number on which the last record started.
  std::size_t record_line() const { return record_line_; }

 private:
  std::istream* in_;
  char delim_;
  std::size_t line_ = 1;
  std::size_t record_line_ = 0;
};

// Quotes a field if it contains the delimiter, a quote, or a newline.
std::string csv_quote(std::string_view field, char delimiter = ',');

void write_csv_record(std::ostream& out, const std::vector<std::string>& fields,
                      char delimiter = ',');

}  // namespace tweetsent

#endif
