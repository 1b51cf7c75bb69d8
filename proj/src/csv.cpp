#include "tweetsent/csv.hpp"

#include <istream>
#include <ostream>

namespace tweetsent {

CsvReader::CsvReader(std::istream& in, char delimiter)
    : in_(&in), delim_(delimiter) {}

bool CsvReader::next(std::vector<std::string>& fields,
                     std::vector<bool>* quoted) {
  fields.clear();
  if (quoted) quoted->clear();
  std::streambuf* buf = in_->rdbuf();
  int ci = buf->sgetc();
  if (ci == std::streambuf::traits_type::eof()) return false;

  record_line_ = line_;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;

  auto push_field = [&] {
    fields.push_back(std::move(field));
    if (quoted) quoted->push_back(field_was_quoted);
    field.clear();
    field_was_quoted = false;
  };

  while (true) {
    ci = buf->sbumpc();
    if (ci == std::streambuf::traits_type::eof()) {
      push_field();
      return true;
    }
    char c = static_cast<char>(ci);
    if (in_quotes) {
      if (c == '"') {
        int peek = buf->sgetc();
        if (peek == '"') {
          buf->sbumpc();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line_;
        field.push_back(c);
      }
      continue;
    }
    if (c == '"' && field.empty() && !field_was_quoted) {
      in_quotes = true;
      field_was_quoted = true;
    } else if (c == delim_) {
      push_field();
    } else if (c == '\n') {
      ++line_;
      push_field();
      return true;
    } else if (c == '\r') {
      int peek = buf->sgetc();
      if (peek == '\n') {
        buf->sbumpc();
        ++line_;
        push_field();
        return true;
      }
      field.push_back(c);
    } else {
      field.push_back(c);
    }
  }
}

std::string csv_quote(std::string_view field, char delimiter) {
  bool needs = false;
  for (char c : field) {
    if (c == delimiter || c == '"' || c == '\n' || c == '\r') {
      needs = true;
      break;
    }
  }
  if (!needs) return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_csv_record(std::ostream& out, const std::vector<std::string>& fields,
                      char delimiter) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out.put(delimiter);
    out << csv_quote(fields[i], delimiter);
  }
  out.put('\n');
}

}  // namespace tweetsent
