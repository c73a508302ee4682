#include "lotforge/error.hpp"

namespace lotforge {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Pose: return "pose";
    case ErrorKind::Placement: return "placement";
    case ErrorKind::Catalog: return "catalog";
    case ErrorKind::NotFound: return "not-found";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Version: return "version";
    case ErrorKind::Integrity: return "integrity";
    case ErrorKind::DuplicateId: return "duplicate-id";
    case ErrorKind::Affordance: return "affordance";
    case ErrorKind::Ingestion: return "ingestion";
    case ErrorKind::MissingData: return "missing-data";
    case ErrorKind::Config: return "config";
    case ErrorKind::Conflict: return "conflict";
    case ErrorKind::Validation: return "validation";
  }
  return "unknown";
}

}  // namespace lotforge
