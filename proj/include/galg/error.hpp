#pragma once

#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace galg {

enum class ErrorKind {
  // description and I/O
  ParseError,
  BadDescription,
  // groupoid
  MissingIdentity,
  NonAssociative,
  BadSourceTarget,
  MissingInverse,
  MissingComposition,
  UnknownObject,
  UnknownMorphism,
  NotConnected,
  BadChoice,
  EmptyObjectSet,
  BadIndex,
  // ring
  NotPrime,
  TableInvalid,
  SizeCapExceeded,
  NotIdempotent,
  NotCentral,
  NotIdeal,
  NotAdditive,
  NotMultiplicative,
  NotBijective,
  NotInDomain,
  UnknownElement,
  // action
  IdentityAxiomFails,
  ExtensionAxiomFails,
  IdealNesting,
  ConditionFails,
  Incompatible,
  // globalization
  ObjectIdealNotUnital,
  AxiomFails,
  // skew ring
  NotUnitalAction,
  NotTauGlobal,
  VerificationFails,
  NotWellDefined,
  MixedRings,
  // invariants and morita
  StandingAssumptionsFail,
  BadKind,
  SearchSpaceExceeded,
  TensorCapExceeded,
  InconsistentEquivalence,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::BadDescription: return "BadDescription";
    case ErrorKind::MissingIdentity: return "MissingIdentity";
    case ErrorKind::NonAssociative: return "NonAssociative";
    case ErrorKind::BadSourceTarget: return "BadSourceTarget";
    case ErrorKind::MissingInverse: return "MissingInverse";
    case ErrorKind::MissingComposition: return "MissingComposition";
    case ErrorKind::UnknownObject: return "UnknownObject";
    case ErrorKind::UnknownMorphism: return "UnknownMorphism";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::BadChoice: return "BadChoice";
    case ErrorKind::EmptyObjectSet: return "EmptyObjectSet";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TableInvalid: return "TableInvalid";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::NotIdempotent: return "NotIdempotent";
    case ErrorKind::NotCentral: return "NotCentral";
    case ErrorKind::NotIdeal: return "NotIdeal";
    case ErrorKind::NotAdditive: return "NotAdditive";
    case ErrorKind::NotMultiplicative: return "NotMultiplicative";
    case ErrorKind::NotBijective: return "NotBijective";
    case ErrorKind::NotInDomain: return "NotInDomain";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::IdentityAxiomFails: return "IdentityAxiomFails";
    case ErrorKind::ExtensionAxiomFails: return "ExtensionAxiomFails";
    case ErrorKind::IdealNesting: return "IdealNesting";
    case ErrorKind::ConditionFails: return "ConditionFails";
    case ErrorKind::Incompatible: return "Incompatible";
    case ErrorKind::ObjectIdealNotUnital: return "ObjectIdealNotUnital";
    case ErrorKind::AxiomFails: return "AxiomFails";
    case ErrorKind::NotUnitalAction: return "NotUnitalAction";
    case ErrorKind::NotTauGlobal: return "NotTauGlobal";
    case ErrorKind::VerificationFails: return "VerificationFails";
    case ErrorKind::NotWellDefined: return "NotWellDefined";
    case ErrorKind::MixedRings: return "MixedRings";
    case ErrorKind::StandingAssumptionsFail: return "StandingAssumptionsFail";
    case ErrorKind::BadKind: return "BadKind";
    case ErrorKind::SearchSpaceExceeded: return "SearchSpaceExceeded";
    case ErrorKind::TensorCapExceeded: return "TensorCapExceeded";
    case ErrorKind::InconsistentEquivalence: return "InconsistentEquivalence";
  }
  return "Unknown";
}

// Every failure carries a kind, a human-readable message and (usually) the
// names of the offending morphisms or elements, so a report can point at
// the exact witness.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message, std::string witness = {})
      : std::runtime_error(compose(kind, message, witness)),
        kind_(kind),
        message_(std::move(message)),
        witness_(std::move(witness)) {}

  // `tag` names the failing condition, axiom or step ("f", "intersections", ...).
  static Error tagged(ErrorKind kind, std::string tag, std::string message,
                      std::string witness = {}) {
    Error e(kind, "(" + tag + ") " + message, std::move(witness));
    e.tag_ = std::move(tag);
    return e;
  }

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& message() const noexcept { return message_; }
  const std::string& witness() const noexcept { return witness_; }
  const std::string& tag() const noexcept { return tag_; }

 private:
  static std::string compose(ErrorKind kind, const std::string& message,
                             const std::string& witness) {
    std::string s{to_string(kind)};
    s += ": ";
    s += message;
    if (!witness.empty()) {
      s += " [";
      s += witness;
      s += "]";
    }
    return s;
  }

  ErrorKind kind_;
  std::string message_;
  std::string witness_;
  std::string tag_;
};

// Outcome of a predicate-style check: false comes with a witness.
struct CheckResult {
  bool ok = true;
  std::string tag;
  std::string witness;

  static CheckResult pass() { return {}; }
  static CheckResult fail(std::string tag, std::string witness) {
    return {false, std::move(tag), std::move(witness)};
  }
  explicit operator bool() const { return ok; }
};

// Size limits for the exhaustive checks. They are configuration: the CLI
// exposes --cap and the GALG_CAP environment variable raises the ring and
// tensor limits together.
struct Caps {
  std::size_t groupoid_morphisms = 512;
  std::size_t ring_component = 4096;      // elements of one table component
  std::size_t ring_total = 65536;         // elements of a product ring
  std::size_t tensor_generators = 4096;   // generator pairs of M (x)_Z N
  std::size_t triple_checks = 200000;     // exhaustive associativity budget
  std::size_t search_candidates = 100000; // Galois candidate tuples
  std::uint64_t seed = 0;                 // sampling above triple_checks

  void apply_override(std::size_t cap) {
    ring_component = cap;
    tensor_generators = cap;
    if (ring_total < cap) ring_total = cap;
  }
};

inline Caps& default_caps() {
  static Caps caps = [] {
    Caps c;
    if (const char* env = std::getenv("GALG_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) c.apply_override(static_cast<std::size_t>(v));
    }
    return c;
  }();
  return caps;
}

}  // namespace galg
