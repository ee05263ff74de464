// Wire types of the HTTP API the UI consumes.
export {};
