#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace symmix {

enum class ErrorCode
{
  degenerate_param,
  bad_weight_spec,
  sample_too_small,
  bad_characteristic_function,
  bad_smoothness,
  degenerate_fit,
  singular_information,
  empty_positive_part,
  bad_input,
  bad_scenario
};

std::string_view to_string(ErrorCode code);

//! Every failure raised by the library carries one of the codes above so that
//! callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace symmix
