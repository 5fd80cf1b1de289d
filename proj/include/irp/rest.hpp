#pragma once

#include "irp/error.hpp"
#include "irp/service.hpp"

namespace httplib {
class Server;
}

namespace irp {

// Registers every /api route on `server`. Errors come back as
// {"error": <code>, "message": <text>} with a 4xx status.
void install_routes(httplib::Server &server, SessionService &service);

// HTTP status used for an error code.
int http_status(ErrorCode code);

} // namespace irp
