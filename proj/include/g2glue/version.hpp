#pragma once

#define G2GLUE_VERSION "1.0.0"
