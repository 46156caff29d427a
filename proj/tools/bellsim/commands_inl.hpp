#pragma once

#include <filesystem>
#include <ostream>

#include <json.hpp>

#include "bell/errors.hpp"

namespace bellsim {

template <class F>
int run_guarded(F&& body, std::ostream& log) {
  try {
    return body();
  } catch (const UsageError& e) {
    log << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const bell::Error& e) {
    log << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const std::filesystem::filesystem_error& e) {
    log << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const nlohmann::json::exception& e) {
    log << "error: " << e.what() << '\n';
    return kDataError;
  }
}

}  // namespace bellsim
