#pragma once

#include <cstddef>
#include <iosfwd>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "core.hpp"

namespace gooml {

/// Error raised for malformed input files; carries the 1-based line number
/// when one is known.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line = 0)
      : std::runtime_error(line ? message + " (line " + std::to_string(line) + ")" : message),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct AttributeDescriptor {
  std::string name;
  FeatureKind kind = FeatureKind::numeric;
  std::vector<std::string> categories;  // nominal only

  /// Index reserved for category strings not present in the header.
  std::size_t unknown_index() const { return categories.size(); }
};

/// Parsed ARFF header following the MEKA multi-label convention: the
/// relation name carries a "-C c" option, c > 0 placing the first c
/// attributes in the label block, c < 0 the last |c|.
struct StreamHeader {
  std::string relation_name;
  std::size_t label_count = 0;  // L
  bool labels_at_front = true;
  std::vector<AttributeDescriptor> attributes;  // all M + L, in file order

  std::size_t feature_count() const { return attributes.size() - label_count; }
  bool is_label_position(std::size_t attribute_index) const {
    return labels_at_front ? attribute_index < label_count
                           : attribute_index >= feature_count();
  }
  /// Attribute descriptors of the feature block, in feature order.
  std::vector<const AttributeDescriptor*> feature_attributes() const;
  FeatureSpecList feature_specs() const;
};

/// Parses everything from "@relation" through "@data" (inclusive).
StreamHeader parse_header(const std::string& header_text);

/// Parses one @data row (dense CSV or sparse "{index value, ...}") into an
/// Instance. Sparse rows default omitted attributes to 0. "?" is accepted
/// for features and rejected for labels.
Instance read_instance(const StreamHeader& header, std::string_view line, std::size_t line_number = 0);

/// Anything that yields a typed instance stream.
class InstanceSource {
 public:
  virtual ~InstanceSource() = default;
  virtual const StreamHeader& header() const = 0;
  /// Next instance, or nullopt at end of stream.
  virtual std::optional<Instance> next() = 0;
};

/// Streaming ARFF reader; holds one line at a time. Gzip-compressed files
/// are recognized by the ".gz" extension.
class ArffReader final : public InstanceSource {
 public:
  static std::unique_ptr<ArffReader> open(const std::string& path);
  static std::unique_ptr<ArffReader> from_string(std::string text);
  ~ArffReader() override;

  const StreamHeader& header() const override { return header_; }
  std::optional<Instance> next() override;

  class LineSource;

 private:
  ArffReader(std::unique_ptr<LineSource> lines);

  std::unique_ptr<LineSource> lines_;
  StreamHeader header_;
  std::size_t line_number_ = 0;
};

/// In-memory source for tests and replay.
class MemoryStream final : public InstanceSource {
 public:
  MemoryStream(StreamHeader header, std::vector<Instance> instances)
      : header_(std::move(header)), instances_(std::move(instances)) {}

  const StreamHeader& header() const override { return header_; }
  std::optional<Instance> next() override {
    if (cursor_ >= instances_.size()) return std::nullopt;
    return instances_[cursor_++];
  }

 private:
  StreamHeader header_;
  std::vector<Instance> instances_;
  std::size_t cursor_ = 0;
};

/// Builds the header a writer would emit for a purely numeric stream with
/// L label attributes in front; shared by the synthetic generator and tests.
StreamHeader make_numeric_header(std::string relation, std::size_t label_count,
                                 std::size_t feature_count);

/// Serializes one instance as a dense ARFF row (6 significant digits for
/// numeric features).
std::string format_instance(const StreamHeader& header, const Instance& instance);

}  // namespace gooml
