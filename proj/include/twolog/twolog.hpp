#pragma once

#include "twolog/algebraic.hpp"
#include "twolog/certificate.hpp"
#include "twolog/certificate_io.hpp"
#include "twolog/cli.hpp"
#include "twolog/interval.hpp"
#include "twolog/laurent.hpp"
#include "twolog/optimizer.hpp"
#include "twolog/paper_suite.hpp"
#include "twolog/unit_circle.hpp"
