/** Wire types mirroring the session service's JSON. The client never
 * computes field arithmetic: every displayed fact is a served field. */
export {};
