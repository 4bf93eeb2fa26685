#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdsketch {

// Text format, one record per line, 1-based indices:
//   header   elem n m | vec n m | mat n d m
//   element  e <v>
//   vector   u <i> <+/-delta>
//   matrix   u <i> <j> <+/-delta>
//   comment  # ...
enum class StreamModel { element, turnstile_vector, turnstile_matrix };

struct StreamUpdate {
  std::int64_t row = 0;    // element value, or coordinate/row index
  std::int64_t col = 0;    // matrix column (0 otherwise)
  std::int64_t delta = 0;  // +1 for element streams
};

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_number(line) {}
  std::size_t line_number;
};

struct ModelViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A replayable update sequence. Immutable after construction; replay() hands
// out independent cursors, so concurrent passes do not interfere. Running
// turnstile entries are validated against the |value| <= n^3 bound at
// construction (the paper states it for matrices; we apply it to vectors as
// well for uniform word accounting).
class StreamSource {
 public:
  StreamSource(StreamModel model, std::int64_t n, std::int64_t d, std::vector<StreamUpdate> body);

  StreamSource(const StreamSource& other)
      : model_(other.model_), n_(other.n_), d_(other.d_), body_(other.body_) {
    passes_.store(other.passes_.load());
  }
  StreamSource& operator=(const StreamSource&) = delete;

  class Cursor {
   public:
    std::optional<StreamUpdate> next() {
      if (pos_ >= src_->body_.size()) return std::nullopt;
      return src_->body_[pos_++];
    }

   private:
    friend class StreamSource;
    explicit Cursor(const StreamSource* src) : src_(src) {}
    const StreamSource* src_;
    std::size_t pos_ = 0;
  };

  Cursor replay() const {
    passes_.fetch_add(1, std::memory_order_relaxed);
    return Cursor(this);
  }

  StreamModel model() const { return model_; }
  std::int64_t universe_size() const { return n_; }
  std::int64_t column_count() const { return d_; }
  std::int64_t length() const { return static_cast<std::int64_t>(body_.size()); }
  std::int64_t pass_count() const { return passes_.load(std::memory_order_relaxed); }
  const std::vector<StreamUpdate>& body() const { return body_; }

  void serialize(std::ostream& out) const;
  std::string serialize() const;
  // FNV-1a over the canonical serialization; echoed in reports.
  std::uint64_t content_hash() const;

  static StreamSource parse(std::istream& in);
  static StreamSource parse_text(const std::string& text);
  static StreamSource load_file(const std::string& path);

 private:
  StreamModel model_;
  std::int64_t n_;
  std::int64_t d_;
  std::vector<StreamUpdate> body_;
  mutable std::atomic<std::int64_t> passes_{0};
};

// Synthetic instances; each is a pure function of (kind, parameters, seed).
//   all-ones                 element stream [1,1,...] (n, m)
//   paired-duplicates        3n/4 distinct values, each exactly twice, shuffled (n; m = 3n/2)
//   random-duplicate-stream  m = 3n/2 uniform elements of [n]
//   random-turnstile-vector  m random updates, small deltas
//   random-low-rank-matrix   n x d matrix of exact rank k from k outer products
struct GeneratorSpec {
  std::string kind;
  std::int64_t n = 0;
  std::int64_t m = 0;
  std::int64_t d = 0;
  std::int64_t k = 0;
};

StreamSource generate_stream(const GeneratorSpec& spec, std::uint64_t seed);

// "gen:<kind>,n=...,m=...,d=...,k=..." as accepted by the CLI --stream flag.
GeneratorSpec parse_generator_spec(const std::string& text);

}  // namespace pdsketch
