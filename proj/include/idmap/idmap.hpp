#pragma once

#include "idmap/code_model.hpp"
#include "idmap/error.hpp"
#include "idmap/evaluation.hpp"
#include "idmap/fca.hpp"
#include "idmap/identifier.hpp"
#include "idmap/lexer.hpp"
#include "idmap/maps.hpp"
#include "idmap/parser.hpp"
#include "idmap/report.hpp"
#include "idmap/xml.hpp"
