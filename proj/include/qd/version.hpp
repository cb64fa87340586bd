#pragma once

#define QD_VERSION "1.0.0"
