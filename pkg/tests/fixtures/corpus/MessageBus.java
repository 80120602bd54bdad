package sample;

/** Pub/sub pair whose halves depend on each other. */
class MessageBus {
    static class Producer {
        private Consumer sink;
        void wire(Consumer c) { sink = c; }
    }
    static class Consumer {
        private Producer source;
        void wire(Producer p) { source = p; }
    }
}
