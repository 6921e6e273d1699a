#include "symmix/error.hpp"

namespace symmix {

std::string_view to_string(ErrorCode code)
{
  switch (code) {
    case ErrorCode::degenerate_param:
      return "DegenerateParam";
    case ErrorCode::bad_weight_spec:
      return "BadWeightSpec";
    case ErrorCode::sample_too_small:
      return "SampleTooSmall";
    case ErrorCode::bad_characteristic_function:
      return "BadCharacteristicFunction";
    case ErrorCode::bad_smoothness:
      return "BadSmoothness";
    case ErrorCode::degenerate_fit:
      return "DegenerateFit";
    case ErrorCode::singular_information:
      return "SingularInformation";
    case ErrorCode::empty_positive_part:
      return "EmptyPositivePart";
    case ErrorCode::bad_input:
      return "BadInput";
    case ErrorCode::bad_scenario:
      return "BadScenario";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
  : std::runtime_error(std::string(to_string(code)) + ": " + message)
  , code_(code)
{}

} // namespace symmix
