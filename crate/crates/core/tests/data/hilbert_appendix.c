/*
 * Reference Hilbert order routine, listing reproduced as published apart
 * from initialising the entry index. Used only by the test suite.
 *
 * Reads "u v w" triples from stdin and prints the bit pattern of the
 * resulting double as 16 hex digits per line.
 */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#define TRUE 1
#define FALSE 0

typedef double FLOAT;
typedef int    INT;
typedef int    BOOLEAN;

typedef struct HSFC_ENTRY_ {
    FLOAT coord[3];
    FLOAT hsfc;

} HSFC_ENTRY;

static INT hsfc_maxlevel  = 30;


static unsigned const int idata3d[] = {
    0, 7, 3, 4, 1, 6, 2, 5, 0, 1, 3, 2, 7, 6, 4, 5, 0, 3, 7, 4, 1, 2, 6, 5, 2, 3, 5, 4, 1, 0, 6, 7,
    4, 5, 3, 2, 7, 6, 0, 1, 4, 7, 3, 0, 5, 6, 2, 1, 6, 7, 5, 4, 1, 0, 2, 3, 0, 1, 7, 6, 3, 2, 4, 5,
    2, 1, 5, 6, 3, 0, 4, 7, 6, 1, 5, 2, 7, 0, 4, 3, 0, 7, 1, 6, 3, 4, 2, 5, 2, 1, 3, 0, 5, 6, 4, 7,
    4, 7, 5, 6, 3, 0, 2, 1, 4, 5, 7, 6, 3, 2, 0, 1, 6, 1, 7, 0, 5, 2, 4, 3, 0, 3, 1, 2, 7, 4, 6, 5,
    2, 3, 1, 0, 5, 4, 6, 7, 6, 7, 1, 0, 5, 4, 2, 3, 2, 5, 1, 6, 3, 4, 0, 7, 4, 3, 7, 0, 5, 2, 6, 1,
    4, 3, 5, 2, 7, 0, 6, 1, 6, 5, 1, 2, 7, 4, 0, 3, 2, 5, 3, 4, 1, 6, 0, 7, 6, 5, 7, 4, 1, 2, 0, 3
};


static unsigned const int istate3d[] = {
    1,  6,  3,  4,  2,  5,  0,  0,  0,  7,  8,  1,  9,  4,  5,  1,
    15, 22, 23, 20, 0,  2,  19, 2,  3,  23, 3,  15, 6,  20, 16, 22,
    11, 4,  12, 4,  20, 1,  22, 13, 22, 12, 20, 11, 5,  0,  5,  19,
    17, 0,  6,  21, 3,  9,  6,  2,  10, 1,  14, 13, 11, 7,  12, 7,
    8,  9,  8,  18, 14, 12, 10, 11, 21, 8,  9,  9,  1,  6,  17, 7,
    7,  17, 15, 12, 16, 13, 10, 10, 11, 14, 9,  5,  11, 22, 0,  8,
    18, 5,  12, 10, 19, 8,  12, 20, 8,  13, 19, 7,  5,  13, 18, 4,
    23, 11, 7,  17, 14, 14, 6,  1,  2,  18, 10, 15, 21, 19, 20, 15,
    16, 21, 17, 19, 16, 2,  3,  18, 6,  10, 16, 14, 17, 23, 17, 15,
    18, 18, 21, 8,  17, 7,  13, 16, 3,  4,  13, 16, 19, 19, 2,  5,
    16, 13, 20, 20, 4,  3,  15, 12, 9,  21, 18, 21, 15, 14, 23, 10,
    22, 22, 6,  1,  23, 11, 4,  3,  14, 23, 2,  9,  22, 23, 21, 0
};


    static unsigned const int *d[] = {
        idata3d,       idata3d + 8,   idata3d + 16,  idata3d + 24,
        idata3d + 32,  idata3d + 40,  idata3d + 48,  idata3d + 56,
        idata3d + 64,  idata3d + 72,  idata3d + 80,  idata3d + 88,
        idata3d + 96,  idata3d + 104, idata3d + 112, idata3d + 120,
        idata3d + 128, idata3d + 136, idata3d + 144, idata3d + 152,
        idata3d + 160, idata3d + 168, idata3d + 176, idata3d + 184
    };

    static unsigned const int *s[] = {
        istate3d,       istate3d + 8,   istate3d + 16,  istate3d + 24,
        istate3d + 32,  istate3d + 40,  istate3d + 48,  istate3d + 56,
        istate3d + 64,  istate3d + 72,  istate3d + 80,  istate3d + 88,
        istate3d + 96,  istate3d + 104, istate3d + 112, istate3d + 120,
        istate3d + 128, istate3d + 136, istate3d + 144, istate3d + 152,
        istate3d + 160, istate3d + 168, istate3d + 176, istate3d + 184
    };


void HilbertInvOrder3d(HSFC_ENTRY *x)
{
    int level, EffLen;
    unsigned int key[3], c[3], temp, stat;
    INT i = 0; /* erratum: the listing leaves i uninitialized */

    static unsigned INTMX;
    static unsigned EfBit;
    static BOOLEAN initialized = FALSE;
    static int k0 = 0, k1 = 0, k2 = 0;

    if (!initialized) {
        initialized = TRUE;

        INTMX = 4294967295U;
        EfBit = INTMX >> 2;

        k0 = 60 - hsfc_maxlevel * 3;
        k1 = 30 - hsfc_maxlevel * 3;
        k2 = -hsfc_maxlevel * 3;
    }

    c[0] = (unsigned int)(x[i].coord[0] * (double)INTMX);
    c[1] = (unsigned int)(x[i].coord[1] * (double)INTMX);
    c[2] = (unsigned int)(x[i].coord[2] * (double)INTMX);
    c[1] >>= 1;
    c[2] >>= 2;

    key[0] = key[1] = key[2] = 0;
    stat = 0;
    EffLen = 30;
    for (level = 0; level < hsfc_maxlevel; level++) {
        EffLen--;
        temp = ((c[0] >> EffLen) & 4) | ((c[1] >> EffLen) & 2) | ((c[2] >> EffLen) & 1);

        key[0] = (key[0] << 3) | ((key[1] >> 27) & 7);
        key[1] = (key[1] << 3) | ((key[2] >> 27) & 7);
        key[2] = (key[2] << 3) | *(d[stat] + temp);

        stat = *(s[stat] + temp);
    }

    key[0] = key[0] & EfBit;
    key[1] = key[1] & EfBit;
    key[2] = key[2] & EfBit;

    x[i].hsfc  = ldexp((double)key[2], k2);
    x[i].hsfc += ldexp((double)key[1], k1);
    x[i].hsfc += ldexp((double)key[0], k0);
}

int main(int argc, char **argv)
{
    HSFC_ENTRY e;
    unsigned long long bits;

    if (argc > 1) hsfc_maxlevel = atoi(argv[1]);
    while (scanf("%lf %lf %lf", &e.coord[0], &e.coord[1], &e.coord[2]) == 3) {
        HilbertInvOrder3d(&e);
        memcpy(&bits, &e.hsfc, sizeof bits);
        printf("%016llx\n", bits);
    }
    return 0;
}
