#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace omlat {

enum class ErrorKind {
  InvalidDescription,
  NotAPartialOrder,
  NotALattice,
  BadOrthocomplement,
  SizeCap,
  IsotropicForm,
  NotDistributive,
  NotBooleanAtomistic,
  NotAnAutomorphism,
  GroupTooLarge,
  DomainMismatch,
  OracleTooLarge,
  NotAMeasure,
  MeetClosureError,
  NotGenerating,
  Inconsistent,
  NotInvariantOnB,
  KernelViolation,
  NotGeneratingForAction,
  DimensionCap,
  EmptyPolytope,
  UnboundedSlice,
  Schema,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidDescription: return "InvalidDescription";
    case ErrorKind::NotAPartialOrder: return "NotAPartialOrder";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::BadOrthocomplement: return "BadOrthocomplement";
    case ErrorKind::SizeCap: return "SizeCap";
    case ErrorKind::IsotropicForm: return "IsotropicForm";
    case ErrorKind::NotDistributive: return "NotDistributive";
    case ErrorKind::NotBooleanAtomistic: return "NotBooleanAtomistic";
    case ErrorKind::NotAnAutomorphism: return "NotAnAutomorphism";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::DomainMismatch: return "DomainMismatch";
    case ErrorKind::OracleTooLarge: return "OracleTooLarge";
    case ErrorKind::NotAMeasure: return "NotAMeasure";
    case ErrorKind::MeetClosureError: return "MeetClosureError";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::Inconsistent: return "Inconsistent";
    case ErrorKind::NotInvariantOnB: return "NotInvariantOnB";
    case ErrorKind::KernelViolation: return "KernelViolation";
    case ErrorKind::NotGeneratingForAction: return "NotGeneratingForAction";
    case ErrorKind::DimensionCap: return "DimensionCap";
    case ErrorKind::EmptyPolytope: return "EmptyPolytope";
    case ErrorKind::UnboundedSlice: return "UnboundedSlice";
    case ErrorKind::Schema: return "Schema";
  }
  return "Unknown";
}

/// Resource-cap errors map to a distinct CLI exit status.
constexpr bool is_resource_cap(ErrorKind k) {
  return k == ErrorKind::SizeCap || k == ErrorKind::GroupTooLarge ||
         k == ErrorKind::DimensionCap || k == ErrorKind::OracleTooLarge;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  Error(ErrorKind kind, const std::string& what, std::vector<std::string> witness)
      : Error(kind, what) {
    witness_ = std::move(witness);
  }

  ErrorKind kind() const noexcept { return kind_; }
  /// Names of the elements that exhibit the failure, when there are any.
  const std::vector<std::string>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witness_;
};

}  // namespace omlat
