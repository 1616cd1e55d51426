#include "arff.hpp"

#include <zlib.h>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace gooml {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_quotes(std::string_view s) {
  if (s.size() >= 2 && ((s.front() == '\'' && s.back() == '\'') || (s.front() == '"' && s.back() == '"'))) {
    return s.substr(1, s.size() - 2);
  }
  return s;
}

bool iequals(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) return false;
  }
  return true;
}

bool istarts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && iequals(s.substr(0, prefix.size()), prefix);
}

double parse_number(std::string_view token, std::size_t line) {
  std::string buf(token);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (end == buf.c_str() || *end != '\0') throw ParseError("unparseable numeric value '" + buf + "'", line);
  return v;
}

/// Locates the "-C <c>" option inside a (possibly quoted) relation name.
int parse_label_count_option(std::string_view relation, std::size_t line) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : relation) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == '\'' || c == '"') {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i] == "-C" || tokens[i] == "-c") {
      if (i + 1 >= tokens.size()) throw ParseError("option -C missing its value", line);
      int value = 0;
      const auto& t = tokens[i + 1];
      auto res = std::from_chars(t.data(), t.data() + t.size(), value);
      if (res.ec != std::errc{} || res.ptr != t.data() + t.size()) {
        throw ParseError("option -C expects an integer, got '" + t + "'", line);
      }
      return value;
    }
  }
  throw ParseError("label count undeclared (no -C option in @relation)", line);
}

AttributeDescriptor parse_attribute_line(std::string_view rest, std::size_t line) {
  rest = trim(rest);
  AttributeDescriptor attr;
  // Attribute name, possibly quoted.
  if (!rest.empty() && (rest.front() == '\'' || rest.front() == '"')) {
    const char quote = rest.front();
    const auto close = rest.find(quote, 1);
    if (close == std::string_view::npos) throw ParseError("unterminated attribute name", line);
    attr.name = std::string(rest.substr(1, close - 1));
    rest = trim(rest.substr(close + 1));
  } else {
    const auto space = rest.find_first_of(" \t");
    if (space == std::string_view::npos) throw ParseError("attribute without a type", line);
    attr.name = std::string(rest.substr(0, space));
    rest = trim(rest.substr(space));
  }
  if (rest.empty()) throw ParseError("attribute without a type", line);

  if (rest.front() == '{') {
    if (rest.back() != '}') throw ParseError("unterminated nominal category list", line);
    attr.kind = FeatureKind::nominal;
    std::string_view body = rest.substr(1, rest.size() - 2);
    std::size_t start = 0;
    while (start <= body.size()) {
      auto comma = body.find(',', start);
      if (comma == std::string_view::npos) comma = body.size();
      auto cat = strip_quotes(trim(body.substr(start, comma - start)));
      if (!cat.empty()) attr.categories.emplace_back(cat);
      start = comma + 1;
    }
    if (attr.categories.empty()) throw ParseError("nominal attribute with no categories", line);
  } else if (istarts_with(rest, "numeric") || istarts_with(rest, "real") || istarts_with(rest, "integer")) {
    attr.kind = FeatureKind::numeric;
  } else {
    throw ParseError("unsupported attribute type '" + std::string(rest) + "'", line);
  }
  return attr;
}

double parse_feature_token(const AttributeDescriptor& attr, std::string_view token, std::size_t line) {
  token = strip_quotes(trim(token));
  if (token == "?") return missing_value;
  if (attr.kind == FeatureKind::numeric) return parse_number(token, line);
  auto it = std::find(attr.categories.begin(), attr.categories.end(), token);
  if (it == attr.categories.end()) return static_cast<double>(attr.unknown_index());
  return static_cast<double>(it - attr.categories.begin());
}

std::uint8_t parse_label_token(const AttributeDescriptor& attr, std::string_view token, std::size_t line) {
  token = strip_quotes(trim(token));
  if (token == "?") throw ParseError("missing value in the label block", line);
  if (attr.kind == FeatureKind::numeric) {
    const double v = parse_number(token, line);
    if (v == 0.0) return 0;
    if (v == 1.0) return 1;
    throw ParseError("label value outside {0,1}", line);
  }
  if (token == "0") return 0;
  if (token == "1") return 1;
  throw ParseError("label value outside {0,1}", line);
}

}  // namespace

std::vector<const AttributeDescriptor*> StreamHeader::feature_attributes() const {
  std::vector<const AttributeDescriptor*> out;
  out.reserve(feature_count());
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (!is_label_position(i)) out.push_back(&attributes[i]);
  }
  return out;
}

FeatureSpecList StreamHeader::feature_specs() const {
  FeatureSpecList specs;
  specs.reserve(feature_count());
  for (const auto* attr : feature_attributes()) {
    if (attr->kind == FeatureKind::numeric) {
      specs.push_back({FeatureKind::numeric, 0});
    } else {
      specs.push_back({FeatureKind::nominal, attr->categories.size() + 1});
    }
  }
  return specs;
}

namespace {

/// Incremental header assembly shared by parse_header and ArffReader.
class HeaderBuilder {
 public:
  /// Feeds one line; returns true once @data has been consumed.
  bool feed(std::string_view line, std::size_t line_number) {
    auto t = trim(line);
    if (t.empty() || t.front() == '%') return false;
    if (istarts_with(t, "@relation")) {
      relation_raw_ = std::string(strip_quotes(trim(t.substr(9))));
      relation_line_ = line_number;
      seen_relation_ = true;
      return false;
    }
    if (istarts_with(t, "@attribute")) {
      if (!seen_relation_) throw ParseError("@attribute before @relation", line_number);
      attributes_.push_back(parse_attribute_line(t.substr(10), line_number));
      return false;
    }
    if (istarts_with(t, "@data")) {
      if (!seen_relation_) throw ParseError("@data before @relation", line_number);
      return true;
    }
    throw ParseError("unexpected header line '" + std::string(t) + "'", line_number);
  }

  StreamHeader finish() {
    if (!seen_relation_) throw ParseError("no @relation line");
    StreamHeader header;
    header.relation_name = relation_raw_;
    const int c = parse_label_count_option(relation_raw_, relation_line_);
    if (c == 0) throw ParseError("label count must be nonzero (-C 0)", relation_line_);
    const std::size_t declared = static_cast<std::size_t>(c > 0 ? c : -c);
    if (attributes_.size() <= declared) {
      throw ParseError("attribute count " + std::to_string(attributes_.size()) +
                           " does not exceed label count " + std::to_string(declared),
                       relation_line_);
    }
    header.label_count = declared;
    header.labels_at_front = c > 0;
    header.attributes = std::move(attributes_);
    for (std::size_t i = 0; i < header.attributes.size(); ++i) {
      if (!header.is_label_position(i)) continue;
      const auto& attr = header.attributes[i];
      if (attr.kind == FeatureKind::nominal) {
        for (const auto& cat : attr.categories) {
          if (cat != "0" && cat != "1") {
            throw ParseError("label attribute '" + attr.name + "' is not binary {0,1}");
          }
        }
      }
    }
    return header;
  }

 private:
  bool seen_relation_ = false;
  std::string relation_raw_;
  std::size_t relation_line_ = 0;
  std::vector<AttributeDescriptor> attributes_;
};

}  // namespace

StreamHeader parse_header(const std::string& header_text) {
  HeaderBuilder builder;
  std::istringstream in(header_text);
  std::string line;
  std::size_t line_number = 0;
  bool saw_data = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (builder.feed(line, line_number)) {
      saw_data = true;
      break;
    }
  }
  if (!saw_data) throw ParseError("header has no @data line");
  return builder.finish();
}

Instance read_instance(const StreamHeader& header, std::string_view line, std::size_t line_number) {
  const std::size_t total = header.attributes.size();
  Instance instance;
  instance.features.reserve(header.feature_count());
  LabelVector labels = LabelVector::zeros(header.label_count);

  std::string_view row = trim(line);
  if (row.empty()) throw ParseError("empty data row", line_number);

  if (row.front() == '{') {
    // Sparse row: omitted attributes default to 0 (numeric zero, first
    // category for nominals, irrelevant for labels).
    if (row.back() != '}') throw ParseError("unterminated sparse row", line_number);
    std::vector<double> values(total, 0.0);
    std::vector<bool> present(total, false);
    std::string_view body = trim(row.substr(1, row.size() - 2));
    std::size_t start = 0;
    while (start < body.size()) {
      auto comma = body.find(',', start);
      if (comma == std::string_view::npos) comma = body.size();
      auto entry = trim(body.substr(start, comma - start));
      start = comma + 1;
      if (entry.empty()) continue;
      const auto space = entry.find_first_of(" \t");
      if (space == std::string_view::npos) throw ParseError("sparse entry without a value", line_number);
      std::size_t index = 0;
      const auto idx_token = entry.substr(0, space);
      auto res = std::from_chars(idx_token.data(), idx_token.data() + idx_token.size(), index);
      if (res.ec != std::errc{} || res.ptr != idx_token.data() + idx_token.size()) {
        throw ParseError("unparseable sparse index '" + std::string(idx_token) + "'", line_number);
      }
      if (index >= total) throw ParseError("sparse index " + std::to_string(index) + " out of range", line_number);
      const auto value_token = trim(entry.substr(space));
      const auto& attr = header.attributes[index];
      if (header.is_label_position(index)) {
        values[index] = parse_label_token(attr, value_token, line_number);
      } else {
        values[index] = parse_feature_token(attr, value_token, line_number);
      }
      present[index] = true;
    }
    std::size_t label_cursor = 0;
    for (std::size_t i = 0; i < total; ++i) {
      if (header.is_label_position(i)) {
        labels.set(label_cursor++, present[i] && values[i] != 0.0);
      } else {
        instance.features.push_back(values[i]);
      }
    }
  } else {
    // Dense CSV row.
    std::vector<std::string_view> tokens;
    tokens.reserve(total);
    std::size_t start = 0;
    const std::string_view sv = row;
    while (start <= sv.size()) {
      auto comma = sv.find(',', start);
      if (comma == std::string_view::npos) comma = sv.size();
      tokens.push_back(trim(sv.substr(start, comma - start)));
      start = comma + 1;
    }
    if (tokens.size() != total) {
      throw ParseError("row has " + std::to_string(tokens.size()) + " values, header declares " +
                           std::to_string(total),
                       line_number);
    }
    std::size_t label_cursor = 0;
    for (std::size_t i = 0; i < total; ++i) {
      const auto& attr = header.attributes[i];
      if (header.is_label_position(i)) {
        labels.set(label_cursor++, parse_label_token(attr, tokens[i], line_number) != 0);
      } else {
        instance.features.push_back(parse_feature_token(attr, tokens[i], line_number));
      }
    }
  }
  instance.labels = std::move(labels);
  return instance;
}

// --- line sources -----------------------------------------------------------

class ArffReader::LineSource {
 public:
  virtual ~LineSource() = default;
  virtual bool next_line(std::string& out) = 0;
};

namespace {

class PlainFileSource final : public ArffReader::LineSource {
 public:
  explicit PlainFileSource(const std::string& path) : in_(path) {
    if (!in_) throw ParseError("cannot open '" + path + "'");
  }
  bool next_line(std::string& out) override { return static_cast<bool>(std::getline(in_, out)); }

 private:
  std::ifstream in_;
};

class GzipFileSource final : public ArffReader::LineSource {
 public:
  explicit GzipFileSource(const std::string& path) : file_(gzopen(path.c_str(), "rb")) {
    if (!file_) throw ParseError("cannot open '" + path + "'");
  }
  ~GzipFileSource() override {
    if (file_) gzclose(file_);
  }
  bool next_line(std::string& out) override {
    out.clear();
    char buffer[1 << 16];
    bool got_any = false;
    while (gzgets(file_, buffer, sizeof(buffer)) != nullptr) {
      got_any = true;
      out += buffer;
      if (!out.empty() && out.back() == '\n') {
        out.pop_back();
        if (!out.empty() && out.back() == '\r') out.pop_back();
        return true;
      }
    }
    return got_any;
  }

 private:
  gzFile file_;
};

class StringSource final : public ArffReader::LineSource {
 public:
  explicit StringSource(std::string text) : in_(std::move(text)) {}
  bool next_line(std::string& out) override { return static_cast<bool>(std::getline(in_, out)); }

 private:
  std::istringstream in_;
};

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

ArffReader::ArffReader(std::unique_ptr<LineSource> lines) : lines_(std::move(lines)) {
  HeaderBuilder builder;
  std::string line;
  bool saw_data = false;
  while (lines_->next_line(line)) {
    ++line_number_;
    if (builder.feed(line, line_number_)) {
      saw_data = true;
      break;
    }
  }
  if (!saw_data) throw ParseError("file has no @data line");
  header_ = builder.finish();
}

ArffReader::~ArffReader() = default;

std::unique_ptr<ArffReader> ArffReader::open(const std::string& path) {
  std::unique_ptr<LineSource> source;
  if (ends_with(path, ".gz")) {
    source = std::make_unique<GzipFileSource>(path);
  } else {
    source = std::make_unique<PlainFileSource>(path);
  }
  return std::unique_ptr<ArffReader>(new ArffReader(std::move(source)));
}

std::unique_ptr<ArffReader> ArffReader::from_string(std::string text) {
  return std::unique_ptr<ArffReader>(new ArffReader(std::make_unique<StringSource>(std::move(text))));
}

std::optional<Instance> ArffReader::next() {
  std::string line;
  while (lines_->next_line(line)) {
    ++line_number_;
    auto t = trim(line);
    if (t.empty() || t.front() == '%') continue;
    return read_instance(header_, t, line_number_);
  }
  return std::nullopt;
}

StreamHeader make_numeric_header(std::string relation, std::size_t label_count,
                                 std::size_t feature_count) {
  StreamHeader header;
  header.relation_name = relation + ": -C " + std::to_string(label_count);
  header.label_count = label_count;
  header.labels_at_front = true;
  header.attributes.reserve(label_count + feature_count);
  for (std::size_t j = 0; j < label_count; ++j) {
    AttributeDescriptor attr;
    attr.name = "label" + std::to_string(j);
    attr.kind = FeatureKind::nominal;
    attr.categories = {"0", "1"};
    header.attributes.push_back(std::move(attr));
  }
  for (std::size_t i = 0; i < feature_count; ++i) {
    AttributeDescriptor attr;
    attr.name = "x" + std::to_string(i);
    attr.kind = FeatureKind::numeric;
    header.attributes.push_back(std::move(attr));
  }
  return header;
}

std::string format_instance(const StreamHeader& header, const Instance& instance) {
  std::string out;
  std::size_t label_cursor = 0;
  std::size_t feature_cursor = 0;
  for (std::size_t i = 0; i < header.attributes.size(); ++i) {
    if (i > 0) out.push_back(',');
    if (header.is_label_position(i)) {
      out.push_back((*instance.labels)[label_cursor++] ? '1' : '0');
      continue;
    }
    const auto& attr = header.attributes[i];
    const double v = instance.features[feature_cursor++];
    if (is_missing(v)) {
      out.push_back('?');
    } else if (attr.kind == FeatureKind::nominal) {
      const auto idx = static_cast<std::size_t>(v);
      out += idx < attr.categories.size() ? attr.categories[idx] : "?";
    } else {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.6g", v);
      out += buf;
    }
  }
  return out;
}

}  // namespace gooml
