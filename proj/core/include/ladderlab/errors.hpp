#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ladderlab {

// Broad classes used by the CLI to pick an exit code.
enum class ErrorClass {
  Parse,     // malformed input text or documents
  Resource,  // a configured size cap was exceeded
  Domain,    // well-formed input that violates an operation's contract
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(what), cls_(cls) {}
  ErrorClass error_class() const noexcept { return cls_; }

 private:
  ErrorClass cls_;
};

#define LADDERLAB_ERROR(Name, Cls)                                   \
  class Name : public Error {                                        \
   public:                                                           \
    explicit Name(const std::string& what) : Error(Cls, what) {}     \
  }

// group-kernel
LADDERLAB_ERROR(SpecParseError, ErrorClass::Parse);
LADDERLAB_ERROR(AxiomViolation, ErrorClass::Parse);
LADDERLAB_ERROR(FactorMismatch, ErrorClass::Domain);
LADDERLAB_ERROR(InfiniteFactor, ErrorClass::Domain);

// free-product
LADDERLAB_ERROR(InvalidElement, ErrorClass::Parse);
LADDERLAB_ERROR(ContextMismatch, ErrorClass::Domain);
LADDERLAB_ERROR(BallTooLarge, ErrorClass::Resource);

// word-language
LADDERLAB_ERROR(ArityMismatch, ErrorClass::Domain);
LADDERLAB_ERROR(AnnotationMismatch, ErrorClass::Domain);
LADDERLAB_ERROR(UnannotatedSyllable, ErrorClass::Domain);
LADDERLAB_ERROR(LengthExceedsRadius, ErrorClass::Domain);

// ladder-search / bound-calculator
LADDERLAB_ERROR(DomainTooLarge, ErrorClass::Resource);
LADDERLAB_ERROR(MissingSuppliedIndex, ErrorClass::Domain);
LADDERLAB_ERROR(CertificateError, ErrorClass::Parse);

#undef LADDERLAB_ERROR

class WordParseError : public Error {
 public:
  WordParseError(const std::string& what, std::size_t position)
      : Error(ErrorClass::Parse,
              what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ladderlab
